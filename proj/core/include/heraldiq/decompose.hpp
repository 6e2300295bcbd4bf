#pragma once

#include "heraldiq/circuit.hpp"

namespace heraldiq {

/// Rectangular mesh layout: m layers of nearest-neighbour cells, m(m-1)/2
/// cells total. Each cell is a phase shifter on the first mode followed by a
/// beam splitter, i.e. C(θ,φ) = BS(θ,0)·P(φ). A diagonal of output phases
/// completes the parameterization of U(m).
struct MeshLayout {
    int modes = 0;
    std::vector<std::pair<int, int>> cells;

    static MeshLayout rectangular(int modes);
    /// 2 angles per cell + modes output phases.
    int parameter_count() const { return 2 * static_cast<int>(cells.size()) + modes; }
};

/// Compiles mesh parameters (θ_0, φ_0, θ_1, φ_1, ..., out_0..out_{m-1})
/// directly into the m×m unitary, unitary by construction.
Matrix mesh_unitary(const MeshLayout& layout, const std::vector<double>& params);

/// Same parameter vector rendered as a Circuit (phase+BS cells, output phases).
Circuit mesh_circuit(const MeshLayout& layout, const std::vector<double>& params);

/// Rectangular (Clements-style) decomposition of a unitary into at most
/// m(m-1)/2 beam splitter cells plus output phases. compile(decompose(u))
/// reproduces u exactly, global phase included.
/// Throws std::invalid_argument if u is not unitary within `tolerance`.
Circuit decompose(const Matrix& u, double tolerance = 1e-10);

/// Mesh parameters reproducing u on the rectangular layout (used to seed
/// searches from an existing circuit).
std::vector<double> mesh_params_from_unitary(const MeshLayout& layout, const Matrix& u,
                                             double tolerance = 1e-10);

}  // namespace heraldiq
