#ifndef NKRANK_NKRANK_HPP
#define NKRANK_NKRANK_HPP

#include "nkrank/affine_solver.hpp"
#include "nkrank/bit_vector.hpp"
#include "nkrank/bounds.hpp"
#include "nkrank/completion.hpp"
#include "nkrank/complex.hpp"
#include "nkrank/errors.hpp"
#include "nkrank/gf2_matrix.hpp"
#include "nkrank/k1_pipeline.hpp"
#include "nkrank/nk_matrix.hpp"
#include "nkrank/parallel.hpp"
#include "nkrank/van_kampen.hpp"

#endif  // NKRANK_NKRANK_HPP
