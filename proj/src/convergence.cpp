#include "mhd1d/convergence.hpp"

#include <cmath>

#include <fmt/format.h>

#include "mhd1d/errors.hpp"
#include "mhd1d/parallel.hpp"

namespace mhd1d {

void check_ladder(const std::vector<std::size_t>& cells) {
  if (cells.size() < 3) {
    throw ConfigError("convergence.levels", fmt::format("need at least 3 grids, got {}", cells.size()));
  }
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (cells[k] == 0) throw ConfigError("convergence.levels", "grid sizes must be positive");
    if (k > 0 && cells[k] != 2 * cells[k - 1]) {
      throw ConfigError("convergence.levels",
                        fmt::format("ladder not nested: {} does not refine {} by 2", cells[k],
                                    cells[k - 1]));
    }
  }
}

std::vector<double> restrict_cells(std::span<const double> fine) {
  std::vector<double> out(fine.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = 0.5 * (fine[2 * i] + fine[2 * i + 1]);
  return out;
}

std::vector<double> restrict_nodes(std::span<const double> fine) {
  std::vector<double> out(fine.size() / 2 + 1);
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = fine[2 * j];
  return out;
}

std::vector<ConvergenceRow> convergence_study(const DataFactory& init,
                                              const std::vector<std::size_t>& cells,
                                              const FluidParameters& params,
                                              const SchemeConfig& config) {
  check_ladder(cells);
  std::vector<State> finals(cells.size());
  parallel_for(cells.size(), [&](std::size_t k) {
    auto grid = std::make_shared<const MassGrid>(MassGrid::uniform(cells[k]));
    SchemeConfig cfg = config;
    cfg.dt_init = config.dt_init * std::pow(0.25, static_cast<double>(k));
    finals[k] = run(init(*grid), grid, params, cfg).snapshots.back();
  });

  std::vector<ConvergenceRow> rows;
  for (Field field : {Field::Tau, Field::U, Field::Theta}) {
    std::optional<double> prev;
    for (std::size_t k = 0; k + 1 < cells.size(); ++k) {
      const MassGrid& coarse = finals[k].mesh();
      const auto c = field_values(finals[k], field);
      const auto f_raw = field_values(finals[k + 1], field);
      const auto f = field == Field::U ? restrict_nodes(f_raw) : restrict_cells(f_raw);
      const auto w = field_weights(coarse, field);
      double sum = 0.0;
      for (std::size_t i = 0; i < c.size(); ++i) sum += w[i] * (c[i] - f[i]) * (c[i] - f[i]);

      ConvergenceRow row;
      row.field = field;
      row.h_coarse = 1.0 / static_cast<double>(cells[k]);
      row.h_fine = 1.0 / static_cast<double>(cells[k + 1]);
      row.error = std::sqrt(sum);
      row.exact = row.error == 0.0 && (!prev || *prev == 0.0);
      if (prev && *prev > 0.0 && row.error > 0.0) row.order = std::log2(*prev / row.error);
      prev = row.error;
      rows.push_back(row);
    }
  }
  return rows;
}

std::optional<double> observed_order(const std::vector<ConvergenceRow>& rows, Field field) {
  std::optional<double> out;
  for (const auto& r : rows) {
    if (r.field == field && r.order) out = r.order;
  }
  return out;
}

}  // namespace mhd1d
