#pragma once

#include <random>

#include "shopd/graded.hpp"

namespace shopd {

/// Random rational from a small palette (0, +-1, +-2, +-1/2), biased
/// towards zero so matrices stay sparse.
Rational random_scalar(std::mt19937_64& rng);

/// Random complex with at most max_dim basis elements, degrees within
/// [deg_lo, deg_hi], and an exact square-zero degree-(+1) differential.
SpacePtr random_complex(std::mt19937_64& rng, int max_dim, int deg_lo, int deg_hi);

/// Random homogeneous map of the given degree with small entries.
GradedMap random_map(std::mt19937_64& rng, const SpacePtr& src, const SpacePtr& tgt, int degree);

/// Seed taken from the SHOPD_SEED environment variable, defaulting to 0.
unsigned long long env_seed();

}  // namespace shopd
