#pragma once

#include "netlap/association.hpp"
#include "netlap/chisq.hpp"
#include "netlap/clt.hpp"
#include "netlap/config.hpp"
#include "netlap/cov.hpp"
#include "netlap/errors.hpp"
#include "netlap/graph.hpp"
#include "netlap/inference.hpp"
#include "netlap/linalg.hpp"
#include "netlap/matrix_io.hpp"
#include "netlap/power.hpp"
#include "netlap/report.hpp"
#include "netlap/rng.hpp"
#include "netlap/series.hpp"
#include "netlap/topology.hpp"
