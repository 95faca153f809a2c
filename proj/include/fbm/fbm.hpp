#ifndef FBM_FBM_HPP
#define FBM_FBM_HPP

#include "fbm/bounds.hpp"
#include "fbm/covariance.hpp"
#include "fbm/ensemble.hpp"
#include "fbm/functionals.hpp"
#include "fbm/generators.hpp"
#include "fbm/random.hpp"
#include "fbm/report.hpp"
#include "fbm/risk.hpp"
#include "fbm/stats.hpp"
#include "fbm/types.hpp"
#include "fbm/verify.hpp"

#endif  // FBM_FBM_HPP
