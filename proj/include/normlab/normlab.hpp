#pragma once

// Finite-truncation laboratory for sum renormings of the sup-norm space:
// exact dual-ball geometry, norm-attainment certificates, and the
// associated experiment suites.

#include "normlab/acosta.hpp"
#include "normlab/attain.hpp"
#include "normlab/ball_sum.hpp"
#include "normlab/config.hpp"
#include "normlab/disc_range.hpp"
#include "normlab/dual_ball.hpp"
#include "normlab/geometry.hpp"
#include "normlab/operator_cols.hpp"
#include "normlab/polynomial.hpp"
#include "normlab/rational.hpp"
#include "normlab/sample.hpp"
#include "normlab/serialize.hpp"
#include "normlab/simplex.hpp"
#include "normlab/suites.hpp"
#include "normlab/sum_norm.hpp"
#include "normlab/vec.hpp"
