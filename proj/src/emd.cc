// Copyright 2026 The Viewscope Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "viewscope/emd.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "viewscope/json_util.h"

namespace viewscope {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMassTolerance = 1e-9;

void CheckPair(std::span<const double> h1, std::span<const double> h2) {
  if (h1.size() != h2.size() || h1.empty()) {
    throw std::invalid_argument("histograms must have equal, nonzero length");
  }
  double m1 = 0.0, m2 = 0.0;
  for (size_t i = 0; i < h1.size(); ++i) {
    if (h1[i] < 0.0 || h2[i] < 0.0) {
      throw std::invalid_argument("histogram bins must be nonnegative");
    }
    m1 += h1[i];
    m2 += h2[i];
  }
  if (std::abs(m1 - m2) > kMassTolerance) {
    throw std::invalid_argument("histogram masses differ");
  }
}

}  // namespace

const char* AxisName(Axis axis) {
  switch (axis) {
    case Axis::kX: return "x";
    case Axis::kY: return "y";
    case Axis::kDepth: return "depth";
  }
  return "?";
}

std::vector<AxisHistogram> AxisHistograms(
    const std::vector<SemanticDepthImage>& images, Axis axis, int bins,
    double d_max, int num_categories) {
  if (bins < 1) throw std::invalid_argument("bins must be >= 1");
  if (!(d_max > 0.0)) throw std::invalid_argument("d_max must be > 0");
  std::vector<AxisHistogram> out(num_categories);
  for (int c = 0; c < num_categories; ++c) {
    out[c].category = c;
    out[c].axis = axis;
    out[c].bins.assign(bins, 0.0);
  }
  for (const SemanticDepthImage& img : images) {
    for (int y = 0; y < img.height; ++y) {
      for (int x = 0; x < img.width; ++x) {
        const size_t i = img.Index(x, y);
        const int c = img.category[i];
        if (c == kBackground || c >= num_categories) continue;
        int bin = 0;
        switch (axis) {
          case Axis::kX:
            bin = static_cast<int>(static_cast<long long>(x) * bins / img.width);
            break;
          case Axis::kY:
            bin = static_cast<int>(static_cast<long long>(y) * bins / img.height);
            break;
          case Axis::kDepth: {
            const double d = img.depth[i];
            if (!std::isfinite(d) || !(d > 0.0)) continue;
            bin = std::min(bins - 1, static_cast<int>(std::floor(d / d_max * bins)));
            break;
          }
        }
        out[c].bins[bin] += 1.0;
        out[c].total += 1.0;
      }
    }
  }
  for (AxisHistogram& h : out) {
    if (h.total > 0.0) {
      for (double& v : h.bins) v /= h.total;
    }
  }
  return out;
}

double EmdThresholded(std::span<const double> h1, std::span<const double> h2,
                      int t) {
  CheckPair(h1, h2);
  if (t < 1) throw std::invalid_argument("threshold must be >= 1");
  // Transshipment on a path graph (neighbours cost 1) plus a hub reachable
  // from every bin at cost t/2 each way: shortest paths are min(|i-j|, t).
  // Solved exactly by successive shortest paths with Dijkstra potentials.
  const int b = static_cast<int>(h1.size());
  const int hub = b, source = b + 1, sink = b + 2, n = b + 3;
  struct Edge {
    int to;
    double cap;
    double cost;
  };
  std::vector<Edge> edges;
  std::vector<std::vector<int>> adj(n);
  auto add = [&](int u, int v, double cap, double cost) {
    adj[u].push_back(static_cast<int>(edges.size()));
    edges.push_back({v, cap, cost});
    adj[v].push_back(static_cast<int>(edges.size()));
    edges.push_back({u, 0.0, -cost});
  };
  for (int i = 0; i + 1 < b; ++i) {
    add(i, i + 1, kInf, 1.0);
    add(i + 1, i, kInf, 1.0);
  }
  for (int i = 0; i < b; ++i) {
    add(i, hub, kInf, t / 2.0);
    add(hub, i, kInf, t / 2.0);
  }
  double to_move = 0.0;
  for (int i = 0; i < b; ++i) {
    const double s = h1[i] - h2[i];
    if (s > 0) {
      add(source, i, s, 0.0);
      to_move += s;
    } else if (s < 0) {
      add(i, sink, -s, 0.0);
    }
  }

  std::vector<double> potential(n, 0.0), dist(n);
  std::vector<int> via(n);
  std::vector<char> done(n);
  double cost = 0.0;
  constexpr double kEps = 1e-15;
  while (to_move > kEps) {
    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(via.begin(), via.end(), -1);
    std::fill(done.begin(), done.end(), 0);
    dist[source] = 0.0;
    for (;;) {
      int u = -1;
      for (int v = 0; v < n; ++v) {
        if (!done[v] && dist[v] < kInf && (u < 0 || dist[v] < dist[u])) u = v;
      }
      if (u < 0) break;
      done[u] = 1;
      for (const int e : adj[u]) {
        const Edge& ed = edges[e];
        if (ed.cap <= kEps) continue;
        const double nd = dist[u] + ed.cost + potential[u] - potential[ed.to];
        if (nd < dist[ed.to] - 1e-13) {
          dist[ed.to] = nd;
          via[ed.to] = e;
        }
      }
    }
    if (dist[sink] == kInf) break;  // remaining excess is round-off
    for (int v = 0; v < n; ++v) {
      if (dist[v] < kInf) potential[v] += dist[v];
    }
    double push = kInf;
    for (int v = sink; v != source; v = edges[via[v] ^ 1].to) {
      push = std::min(push, edges[via[v]].cap);
    }
    for (int v = sink; v != source; v = edges[via[v] ^ 1].to) {
      edges[via[v]].cap -= push;
      edges[via[v] ^ 1].cap += push;
      cost += push * edges[via[v]].cost;
    }
    to_move -= push;
  }
  return std::max(cost, 0.0);
}

double TransportationOracle(std::span<const double> h1,
                            std::span<const double> h2,
                            const std::vector<std::vector<double>>& ground) {
  CheckPair(h1, h2);
  const int b = static_cast<int>(h1.size());
  if (b > 64) throw std::invalid_argument("oracle limited to 64 bins");
  if (static_cast<int>(ground.size()) != b) {
    throw std::invalid_argument("ground matrix size mismatch");
  }
  for (const auto& row : ground) {
    if (static_cast<int>(row.size()) != b) {
      throw std::invalid_argument("ground matrix size mismatch");
    }
  }
  // Standard form: x_ij >= 0, row sums = h1, column sums = h2 (last column
  // constraint dropped as redundant). One artificial per row.
  const int m = 2 * b - 1;
  const int nx = b * b;
  const int ncols = nx + m;
  const int width = ncols + 1;  // last column is the right-hand side
  std::vector<double> tab(static_cast<size_t>(m + 1) * width, 0.0);
  auto at = [&](int r, int c) -> double& {
    return tab[static_cast<size_t>(r) * width + c];
  };
  for (int i = 0; i < b; ++i) {
    for (int j = 0; j < b; ++j) {
      at(i, i * b + j) = 1.0;
      if (j < b - 1) at(b + j, i * b + j) = 1.0;
    }
  }
  for (int i = 0; i < b; ++i) at(i, width - 1) = h1[i];
  for (int j = 0; j < b - 1; ++j) at(b + j, width - 1) = h2[j];
  std::vector<int> basis(m);
  for (int r = 0; r < m; ++r) {
    at(r, nx + r) = 1.0;
    basis[r] = nx + r;
  }
  const int obj = m;
  constexpr double kEps = 1e-12;

  auto pivot = [&](int pr, int pc) {
    const double p = at(pr, pc);
    for (int c = 0; c < width; ++c) at(pr, c) /= p;
    for (int r = 0; r <= m; ++r) {
      if (r == pr) continue;
      const double f = at(r, pc);
      if (f == 0.0) continue;
      for (int c = 0; c < width; ++c) at(r, c) -= f * at(pr, c);
    }
    basis[pr] = pc;
  };
  // Bland's rule: smallest improving column, smallest basic index on ties.
  auto run = [&](int allowed_cols) {
    for (;;) {
      int pc = -1;
      for (int c = 0; c < allowed_cols; ++c) {
        if (at(obj, c) < -kEps) {
          pc = c;
          break;
        }
      }
      if (pc < 0) return;
      int pr = -1;
      double best = kInf;
      for (int r = 0; r < m; ++r) {
        if (at(r, pc) <= kEps) continue;
        const double ratio = at(r, width - 1) / at(r, pc);
        if (ratio < best - kEps ||
            (std::abs(ratio - best) <= kEps && basis[r] < basis[pr])) {
          best = ratio;
          pr = r;
        }
      }
      if (pr < 0) throw std::logic_error("transportation LP unbounded");
      pivot(pr, pc);
    }
  };

  // Phase 1: minimize the artificial sum.
  for (int c = 0; c < width; ++c) {
    double s = 0.0;
    for (int r = 0; r < m; ++r) s += at(r, c);
    at(obj, c) = (c >= nx && c < ncols) ? 0.0 : -s;
  }
  run(nx);
  if (-at(obj, width - 1) > 1e-9) {
    throw std::invalid_argument("transportation LP infeasible");
  }
  // Drive zero-level artificials out of the basis.
  for (int r = 0; r < m; ++r) {
    if (basis[r] < nx) continue;
    for (int c = 0; c < nx; ++c) {
      if (std::abs(at(r, c)) > 1e-9) {
        pivot(r, c);
        break;
      }
    }
  }
  // Phase 2 reduced costs.
  for (int c = 0; c < width; ++c) at(obj, c) = 0.0;
  for (int i = 0; i < b; ++i) {
    for (int j = 0; j < b; ++j) at(obj, i * b + j) = ground[i][j];
  }
  for (int r = 0; r < m; ++r) {
    if (basis[r] >= nx) continue;
    const double cb = at(obj, basis[r]);
    if (cb == 0.0) continue;
    for (int c = 0; c < width; ++c) at(obj, c) -= cb * at(r, c);
  }
  run(nx);
  return std::max(-at(obj, width - 1), 0.0);
}

double EmdCdf(std::span<const double> h1, std::span<const double> h2) {
  CheckPair(h1, h2);
  double c1 = 0.0, c2 = 0.0, total = 0.0;
  for (size_t i = 0; i < h1.size(); ++i) {
    c1 += h1[i];
    c2 += h2[i];
    total += std::abs(c1 - c2);
  }
  return total;
}

void EmdConfig::Validate() const {
  if (bins < 1) throw std::invalid_argument("emd bins must be >= 1");
  if (threshold < 1) throw std::invalid_argument("emd threshold must be >= 1");
  if (!(d_max > 0.0)) throw std::invalid_argument("emd d_max must be > 0");
}

double EmdReport::Value(CategoryId category, Axis axis) const {
  for (const EmdEntry& e : entries) {
    if (e.category == category && e.axis == axis) return e.value;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

EmdReport EvaluateSets(const std::vector<SemanticDepthImage>& generated,
                       const std::vector<SemanticDepthImage>& examples,
                       const CategoryTable& categories, const EmdConfig& cfg) {
  cfg.Validate();
  const int n = categories.size();
  EmdReport report;
  report.config = cfg;
  report.category_names = categories.names();

  std::array<std::vector<AxisHistogram>, 3> gen, ex;
  for (const Axis a : kAllAxes) {
    const int k = static_cast<int>(a);
    gen[k] = AxisHistograms(generated, a, cfg.bins, cfg.d_max, n);
    ex[k] = AxisHistograms(examples, a, cfg.bins, cfg.d_max, n);
  }
  std::array<double, 3> sums{};
  int included = 0;
  for (int c = 0; c < n; ++c) {
    // Presence is judged on the x axis, which sees every labeled pixel.
    const bool in_gen = !gen[0][c].empty();
    const bool in_ex = !ex[0][c].empty();
    if (!in_gen && !in_ex) {
      report.excluded.push_back(c);
      continue;
    }
    ++included;
    for (const Axis a : kAllAxes) {
      const int k = static_cast<int>(a);
      const AxisHistogram& g = gen[k][c];
      const AxisHistogram& e = ex[k][c];
      double value;
      bool one_sided = false;
      if (g.empty() && e.empty()) {
        value = 0.0;  // e.g. no depth in either set
      } else if (g.empty() || e.empty()) {
        value = 1.0;
        one_sided = true;
      } else {
        value = std::clamp(EmdThresholded(g.bins, e.bins, cfg.threshold) /
                               cfg.threshold,
                           0.0, 1.0);
      }
      report.entries.push_back({c, a, value, one_sided});
      sums[k] += value;
    }
  }
  if (included > 0) {
    for (int k = 0; k < 3; ++k) report.axis_means[k] = sums[k] / included;
    report.grand_mean =
        (sums[0] + sums[1] + sums[2]) / (3.0 * static_cast<double>(included));
  }
  return report;
}

std::string EmdReport::ToJson() const {
  using nlohmann::json;
  json entries_json = json::array();
  for (const EmdEntry& e : entries) {
    entries_json.push_back({{"category", e.category},
                            {"name", category_names[e.category]},
                            {"axis", AxisName(e.axis)},
                            {"emd", e.value},
                            {"one_sided", e.one_sided}});
  }
  json excluded_json = json::array();
  for (const CategoryId c : excluded) excluded_json.push_back(category_names[c]);
  json doc{{"format", "viewscope-emd"},
           {"bins", config.bins},
           {"threshold", config.threshold},
           {"d_max", config.d_max},
           {"entries", entries_json},
           {"excluded", excluded_json},
           {"axis_means",
            {{"x", axis_means[0]}, {"y", axis_means[1]}, {"depth", axis_means[2]}}},
           {"grand_mean", grand_mean}};
  return doc.dump(1) + "\n";
}

std::string EmdReport::ToCsv() const {
  std::ostringstream out;
  out.precision(17);
  out << "category,axis,emd\n";
  for (const EmdEntry& e : entries) {
    out << category_names[e.category] << ',' << AxisName(e.axis) << ','
        << e.value << '\n';
  }
  for (const Axis a : kAllAxes) {
    out << "MEAN," << AxisName(a) << ',' << axis_means[static_cast<int>(a)]
        << '\n';
  }
  out << "MEAN,all," << grand_mean << '\n';
  return out.str();
}

std::string EmdReport::ToTable() const {
  std::string out;
  char line[160];
  std::snprintf(line, sizeof(line), "%-16s %8s %8s %8s\n", "category", "x", "y",
                "depth");
  out += line;
  for (size_t i = 0; i + 2 < entries.size(); i += 3) {
    std::snprintf(line, sizeof(line), "%-16s %8.3f %8.3f %8.3f\n",
                  category_names[entries[i].category].c_str(), entries[i].value,
                  entries[i + 1].value, entries[i + 2].value);
    out += line;
  }
  std::snprintf(line, sizeof(line), "%-16s %8.3f %8.3f %8.3f\n", "MEAN",
                axis_means[0], axis_means[1], axis_means[2]);
  out += line;
  std::snprintf(line, sizeof(line), "%-16s %8.3f\n", "GRAND MEAN", grand_mean);
  out += line;
  return out;
}

void WriteEmdReport(const std::filesystem::path& json_path,
                    const std::filesystem::path& csv_path,
                    const EmdReport& report) {
  WriteTextFile(json_path, report.ToJson());
  WriteTextFile(csv_path, report.ToCsv());
}

}  // namespace viewscope
