#pragma once

// Dirichlet polynomial algebra, Hardy/Bergman/mixed norms, randomization
// experiments, inclusion and superposition region deciders.

#include "dirichlet/experiments.hpp"
#include "dirichlet/norms.hpp"
#include "dirichlet/parallel.hpp"
#include "dirichlet/polynomial.hpp"
#include "dirichlet/primes.hpp"
#include "dirichlet/quadrature.hpp"
#include "dirichlet/random.hpp"
#include "dirichlet/rational.hpp"
#include "dirichlet/regions.hpp"
#include "dirichlet/serialization.hpp"
#include "dirichlet/superposition.hpp"
