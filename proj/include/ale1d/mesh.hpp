#ifndef ALE1D_MESH_HPP
#define ALE1D_MESH_HPP

#include <optional>
#include <vector>

#include "ale1d/predictor.hpp"
#include "ale1d/reconstruction.hpp"
#include "ale1d/state.hpp"

namespace ale1d {

/// A mesh point shared by two cells.  Its position is valid at its own
/// node time, which never decreases.
struct Node {
    double x = 0.0;
    double time = 0.0;
};

/// A moving control volume at its own local time.
struct Cell {
    int index = -1;
    double t = 0.0;          // current local time
    double t_future = 0.0;   // end of the current local step
    double x_left = 0.0;     // geometry captured at the cell's own time
    double x_right = 0.0;
    State avg;               // cell average at time t
    State memory;            // accumulated neighbor flux time-integrals
    ReconstructionPolynomial recon;
    std::optional<SpaceTimePredictor> predictor;
    long updates = 0;
    bool done = false;

    double width() const { return x_right - x_left; }
    double dt() const { return t_future - t; }
};

struct Mesh {
    std::vector<Cell> cells;
    std::vector<Node> nodes;  // cells.size() + 1 entries

    int size() const { return static_cast<int>(cells.size()); }
};

/// Immutable copy of one cell's final data, for output and error norms.
struct CellSnapshot {
    double x_left = 0.0;
    double x_right = 0.0;
    double t = 0.0;
    State avg;
    ReconstructionPolynomial recon;
};

} // namespace ale1d

#endif
