#ifndef ALE1D_IO_HPP
#define ALE1D_IO_HPP

#include <string>
#include <vector>

#include "ale1d/mesh.hpp"
#include "ale1d/scheduler.hpp"
#include "ale1d/system.hpp"

namespace ale1d {

/// One row per cell: center, width, conserved components, primitive
/// components; decimal text with 17 significant digits so parse-back is
/// bit-identical.
void write_solution(const std::string& path, const std::vector<CellSnapshot>& cells,
                    const System& sys);

struct SolutionDump {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    int column(const std::string& name) const;
};

SolutionDump read_solution(const std::string& path);

/// Streams one space-time quadrilateral per element update:
/// cell, t0, t1, xl0, xr0, xl1, xr1.
class SpacetimeMeshWriter {
public:
    explicit SpacetimeMeshWriter(const std::string& path);
    ~SpacetimeMeshWriter();
    void record(const UpdateEvent& ev);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

void write_report_json(const std::string& path, const RunConfig& cfg,
                       const RunReport& report, const System& sys);

std::string format_report(const RunConfig& cfg, const RunReport& report,
                          const System& sys);

} // namespace ale1d

#endif
