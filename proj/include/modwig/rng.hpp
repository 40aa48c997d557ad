#pragma once

#include <cstdint>
#include <random>

#include "modwig/hmodule.hpp"

namespace modwig::rng {

using Engine = std::mt19937_64;

inline Engine make_engine(std::uint64_t seed) { return Engine(seed); }

/// Matrix with independent standard complex Gaussian entries.
Mat ginibre(Index rows, Index cols, Engine& eng);

/// Haar-distributed unitary: QR of a Ginibre matrix with the R diagonal
/// phases folded into Q.
Mat random_unitary(Index n, Engine& eng);

Mat random_hermitian(Index n, Engine& eng);

CVec random_unit_vector(Index d, Engine& eng);

ModuleElement random_module_element(Index d, Index n, Engine& eng);

}  // namespace modwig::rng
