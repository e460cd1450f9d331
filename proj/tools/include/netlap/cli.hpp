#pragma once

// The netlap command-line front end as a library, so tests can drive it
// without spawning processes.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "netlap/inference.hpp"

namespace netlap::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitValidation = 3;
inline constexpr int kExitNumerical = 4;

struct IngestOptions {
  Eigen::Index d = 0;          // declared vertex count
  bool header = false;         // matrix files carry one header row
  bool laplacian = false;      // files hold Laplacians, not association matrices
  double tol = kDefaultRelTolerance;
};

struct ManifestRow {
  std::string subject_id;
  std::string group;
  std::filesystem::path path;  // resolved against the manifest directory
};

struct GroupData {
  std::string label;
  std::vector<std::string> subjects;
  std::vector<LaplacianMatrix> members;
};

struct Ingested {
  std::vector<ManifestRow> rows;
  std::vector<GroupData> groups;  // first-appearance order of labels
  std::string input_digest;       // sha256 over manifest and matrix bytes

  /// Throws ValidationError for an unknown label.
  const GroupData& group(const std::string& label) const;
};

/// Manifest: comma-separated rows subject_id,group,path with an optional
/// header row of exactly those names. Relative paths are taken relative to the
/// manifest's directory. Errors name the manifest line and the matrix file.
Ingested ingest_manifest(const std::filesystem::path& manifest, const IngestOptions& opts);

/// Runs one command line (without the program name). Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace netlap::cli
