#pragma once

#include "hypoisson/core.hpp"
#include "hypoisson/exterior.hpp"
#include "hypoisson/lorentz.hpp"
#include "hypoisson/specfun.hpp"
#include "hypoisson/sphquad.hpp"
#include "hypoisson/kchart.hpp"
#include "hypoisson/boundary.hpp"
#include "hypoisson/cfun.hpp"
#include "hypoisson/eisenstein.hpp"
#include "hypoisson/poisson.hpp"
#include "hypoisson/invops.hpp"
