#pragma once

// Umbrella header: number-theoretic toolkit around Carmichael numbers whose
// prime factors p have p - 1 a sum of two squares, the semigroup B generated
// by the primes === 1 (mod 4), the analytic constants controlling their
// density, and a desk-scale run of the subset-product construction.

#include "carmsq/agp.hpp"
#include "carmsq/arith.hpp"
#include "carmsq/carmichael.hpp"
#include "carmsq/errors.hpp"
#include "carmsq/parallel.hpp"
#include "carmsq/primes.hpp"
#include "carmsq/serialize.hpp"
#include "carmsq/sieve_numerics.hpp"
#include "carmsq/two_squares.hpp"
