#pragma once

// Umbrella header for the sparseconv library.

#include "sparseconv/dense_conv.hpp"
#include "sparseconv/deterministic.hpp"
#include "sparseconv/engines.hpp"
#include "sparseconv/errors.hpp"
#include "sparseconv/ext_field.hpp"
#include "sparseconv/fq_poly.hpp"
#include "sparseconv/hashing.hpp"
#include "sparseconv/int.hpp"
#include "sparseconv/io.hpp"
#include "sparseconv/las_vegas.hpp"
#include "sparseconv/oracle.hpp"
#include "sparseconv/prime_field.hpp"
#include "sparseconv/rng.hpp"
#include "sparseconv/sparsity.hpp"
#include "sparseconv/vandermonde.hpp"
#include "sparseconv/vec.hpp"
