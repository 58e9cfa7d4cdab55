#pragma once

#include "corput/digit_formula.hpp"
#include "corput/discrepancy.hpp"
#include "corput/errors.hpp"
#include "corput/harmonic.hpp"
#include "corput/integrand.hpp"
#include "corput/limit_stats.hpp"
#include "corput/limits.hpp"
#include "corput/normal.hpp"
#include "corput/norms.hpp"
#include "corput/qmc.hpp"
#include "corput/radix.hpp"
#include "corput/rational.hpp"
#include "corput/serialize.hpp"
#include "corput/weak_dep.hpp"
