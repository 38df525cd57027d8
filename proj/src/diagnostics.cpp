#include "pfr/diagnostics.hpp"

#include <sstream>
#include <stdexcept>

#include "pfr/functional.hpp"

namespace pfr {

FrequencyDiagnostic frequency_diagnostic(const SubspaceFamily& F) {
  const ProblemParams& params = F.params();
  const std::uint64_t q = params.point_count;
  FrequencyDiagnostic out;
  out.threshold_exponent =
      static_cast<std::int64_t>(params.n) - 4 * static_cast<std::int64_t>(params.t) - 2;
  out.threshold = out.threshold_exponent >= 0
                      ? pow_sat(params.p, static_cast<std::uint64_t>(out.threshold_exponent))
                      : 1;
  out.pair_bound = pow_sat(params.p, params.n + 2 * params.t + 1);
  out.u_bound = pow_sat(params.p, 6 * params.t + 3);

  std::vector<std::uint64_t> count(q, 0);
  for (std::uint64_t xi = 0; xi < q; ++xi) {
    const std::vector<Point> members = F.at_index(xi).elements();
    out.pair_count += members.size();
    for (const Point& v : members) ++count[v.index()];
  }
  for (std::uint64_t vi = 0; vi < q; ++vi) {
    if (count[vi] >= out.threshold) out.u_indices.push_back(vi);
  }

  // U + U coverage; |U|² sums cannot cover q points if |U|² < q.
  const std::uint64_t usz = out.u_indices.size();
  if (usz * usz >= q) {
    std::vector<Point> upoints;
    upoints.reserve(usz);
    for (std::uint64_t vi : out.u_indices) upoints.push_back(Point::from_index(vi, params));
    std::vector<char> hit(q, 0);
    std::uint64_t marked = 0;
    for (std::uint64_t i = 0; i < usz && marked < q; ++i) {
      for (std::uint64_t j = 0; j < usz && marked < q; ++j) {
        const std::uint64_t s = (upoints[i] + upoints[j]).index();
        if (!hit[s]) {
          hit[s] = 1;
          ++marked;
        }
      }
    }
    out.covers = (marked == q);
  }
  return out;
}

CountingChainReport counting_chain_check(const SubspaceFamily& F) {
  CountingChainReport report;
  report.diag = frequency_diagnostic(F);
  const PairSearchResult res = find_violating_pair(F, PairStrategy::exhaustive());
  report.pair_found = res.pair.has_value();
  if (res.pair) {
    report.pair_indices = {res.pair->first.index(), res.pair->second.index()};
  }
  report.implication_holds = report.pair_found ? true : report.diag.covers;
  report.pair_count_within_bound = report.diag.pair_count <= report.diag.pair_bound;
  report.u_within_bound = report.diag.threshold_exponent >= 0
                              ? report.diag.u_indices.size() <= report.diag.u_bound
                              : true;
  const std::uint64_t usz = report.diag.u_indices.size();
  report.u_reaches_half = usz * usz >= F.params().point_count;
  return report;
}

namespace {

SweepRow run_cell(const SweepCell& cell, const SweepPlan& plan, std::uint32_t workers) {
  SweepRow row;
  row.p = cell.p;
  row.n = cell.n;
  row.t = cell.t;
  row.source = cell.source;
  row.seed = cell.seed;
  try {
    const ProblemParams params(cell.p, cell.n, cell.t);
    std::optional<SubspaceFamily> family;
    if (cell.source == "random") {
      family = random_subspace_family(params, derive_seed(cell.seed, 1));
    } else if (cell.source == "spanning") {
      family = spanning_family(params);
    } else if (cell.source == "map") {
      if (!cell.raw_map) {
        throw std::invalid_argument("sweep: map cell carries no basis images");
      }
      std::vector<Functional> images;
      for (const auto& raw : *cell.raw_map) {
        std::vector<std::pair<std::uint64_t, Residue>> terms;
        for (const auto& [idx, coeff] : raw) {
          if (coeff >= params.p) throw std::invalid_argument("sweep: coefficient out of range");
          terms.emplace_back(idx, static_cast<Residue>(coeff));
        }
        images.emplace_back(params, std::move(terms));
      }
      const LinearMap map(params, std::move(images));
      const CoboundarySet S = CoboundarySet::build(params);
      auto built = family_from_map(map, params.t, S, plan.mode);
      if (std::holds_alternative<UncoveredPoint>(built)) {
        row.error = "uncovered_point";
        return row;
      }
      family = std::get<SubspaceFamily>(std::move(built));
    } else {
      throw std::invalid_argument("sweep: unknown family source");
    }

    const PairStrategy strategy =
        plan.budget == 0
            ? PairStrategy::exhaustive(workers)
            : PairStrategy::randomized(derive_seed(cell.seed, 2), plan.budget, workers);
    const PairSearchResult res = find_violating_pair(*family, strategy);
    const FrequencyDiagnostic diag = frequency_diagnostic(*family);

    row.probes = res.probes;
    row.pair_found = res.pair.has_value();
    if (res.pair) {
      row.x_index = res.pair->first.index();
      row.y_index = res.pair->second.index();
    }
    row.u_size = diag.u_indices.size();
    row.u_covers = diag.covers;
  } catch (const CapError&) {
    row.error = "cap_exceeded";
  } catch (const std::invalid_argument&) {
    row.error = "invalid_params";
  }
  return row;
}

}  // namespace

std::vector<SweepRow> sweep(const SweepPlan& plan, std::uint32_t workers) {
  std::vector<SweepRow> rows;
  rows.reserve(plan.cells.size());
  for (const SweepCell& cell : plan.cells) {
    rows.push_back(run_cell(cell, plan, workers));
  }
  return rows;
}

std::string sweep_rows_to_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "p,n,t,source,seed,probes,pair_found,x_index,y_index,u_size,u_covers,error\n";
  auto opt_num = [&](const std::optional<std::uint64_t>& v) {
    if (v) out << *v;
  };
  auto opt_bool = [&](const std::optional<bool>& v) {
    if (v) out << (*v ? 1 : 0);
  };
  for (const SweepRow& row : rows) {
    out << row.p << ',' << row.n << ',' << row.t << ',' << row.source << ',' << row.seed << ',';
    opt_num(row.probes);
    out << ',';
    opt_bool(row.pair_found);
    out << ',';
    opt_num(row.x_index);
    out << ',';
    opt_num(row.y_index);
    out << ',';
    opt_num(row.u_size);
    out << ',';
    opt_bool(row.u_covers);
    out << ',' << row.error << '\n';
  }
  return out.str();
}

}  // namespace pfr
