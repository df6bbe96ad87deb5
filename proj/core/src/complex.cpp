#include "ramanujan/complex.hpp"

#include <algorithm>
#include <deque>
#include <ostream>
#include <string>

#include "ramanujan/error.hpp"

namespace ramanujan {

std::vector<std::uint32_t> CayleyComplex::neighbors(std::uint32_t v) const {
  return {adj.begin() + adj_offsets[v], adj.begin() + adj_offsets[v + 1]};
}

std::size_t CayleyComplex::cell_count(unsigned dim) const {
  if (dim == 0) return vertex_count;
  if (dim == 1) return edges.size();
  return dim < cells.size() ? cells[dim].size() : 0;
}

namespace {

// Extends `clique` by each candidate; cand holds common higher neighbors.
void extend(const CayleyComplex& cx, std::vector<std::uint32_t>& clique, const std::vector<std::uint32_t>& cand,
            unsigned max_size, std::vector<std::vector<std::vector<std::uint32_t>>>& out) {
  for (std::size_t i = 0; i < cand.size(); ++i) {
    const std::uint32_t w = cand[i];
    clique.push_back(w);
    out[clique.size() - 1].push_back(clique);
    if (clique.size() < max_size) {
      std::vector<std::uint32_t> next;
      const auto b = cx.adj.begin() + cx.adj_offsets[w];
      const auto e = cx.adj.begin() + cx.adj_offsets[w + 1];
      std::set_intersection(cand.begin() + static_cast<std::ptrdiff_t>(i) + 1, cand.end(), b, e,
                            std::back_inserter(next));
      if (!next.empty()) extend(cx, clique, next, max_size, out);
    }
    clique.pop_back();
  }
}

}  // namespace

CayleyComplex build_complex(const GroupClosure& closure, unsigned d, unsigned max_dim) {
  if (d < 2) throw Error(ErrorKind::InvalidArgument, "d must be at least 2");
  if (max_dim < 1 || max_dim > d - 1) {
    throw Error(ErrorKind::InvalidArgument, "max_dim must lie in [1, d-1]");
  }
  CayleyComplex cx;
  cx.d = d;
  cx.vertex_count = closure.size();
  const auto n = static_cast<std::uint32_t>(cx.vertex_count);

  std::vector<SkeletonEdge> raw;
  raw.reserve(closure.edges.size());
  for (const auto& e : closure.edges) {
    if (e.src == e.dst) continue;
    if (e.color == 0 || e.color >= d) throw Error(ErrorKind::InvalidArgument, "edge color out of range");
    if (e.src < e.dst) {
      raw.push_back({e.src, e.dst, 1u << e.color});
    } else {
      raw.push_back({e.dst, e.src, 1u << (d - e.color)});
    }
  }
  std::sort(raw.begin(), raw.end(), [](const SkeletonEdge& a, const SkeletonEdge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  for (const auto& e : raw) {
    if (!cx.edges.empty() && cx.edges.back().u == e.u && cx.edges.back().v == e.v) {
      cx.edges.back().colors |= e.colors;
    } else {
      cx.edges.push_back(e);
    }
  }

  std::vector<std::uint32_t> deg(n + 1, 0);
  for (const auto& e : cx.edges) {
    ++deg[e.u];
    ++deg[e.v];
  }
  cx.adj_offsets.assign(n + 1, 0);
  for (std::uint32_t v = 0; v < n; ++v) cx.adj_offsets[v + 1] = cx.adj_offsets[v] + deg[v];
  cx.adj.resize(cx.adj_offsets[n]);
  std::vector<std::uint32_t> fill(cx.adj_offsets.begin(), cx.adj_offsets.end() - 1);
  for (const auto& e : cx.edges) {
    cx.adj[fill[e.u]++] = e.v;
    cx.adj[fill[e.v]++] = e.u;
  }
  for (std::uint32_t v = 0; v < n; ++v)
    std::sort(cx.adj.begin() + cx.adj_offsets[v], cx.adj.begin() + cx.adj_offsets[v + 1]);

  cx.cells.assign(max_dim + 1, {});
  if (max_dim >= 2) {
    std::vector<std::vector<std::vector<std::uint32_t>>> by_size(max_dim + 1);
    std::vector<std::uint32_t> clique;
    for (std::uint32_t v = 0; v < n; ++v) {
      const auto b = cx.adj.begin() + cx.adj_offsets[v];
      const auto e = cx.adj.begin() + cx.adj_offsets[v + 1];
      std::vector<std::uint32_t> higher(std::upper_bound(b, e, v), e);
      clique.assign(1, v);
      extend(cx, clique, higher, max_dim + 1, by_size);
    }
    for (unsigned i = 2; i <= max_dim; ++i) cx.cells[i] = std::move(by_size[i]);
    for (unsigned i = 2; i <= max_dim; ++i) std::sort(cx.cells[i].begin(), cx.cells[i].end());
  }
  return cx;
}

std::vector<std::uint32_t> assign_colors(const GroupClosure& closure, unsigned r) {
  if (r == 0) throw Error(ErrorKind::InvalidArgument, "r must be positive");
  const std::size_t n = closure.size();
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> out(n);
  for (const auto& e : closure.edges) {
    out[e.src].push_back({e.dst, e.color % r});
    out[e.dst].push_back({e.src, (r - e.color % r) % r});
  }
  constexpr std::uint32_t kUnset = ~0u;
  std::vector<std::uint32_t> color(n, kUnset);
  if (n == 0) return color;
  std::deque<std::uint32_t> queue{0};
  color[0] = 0;
  while (!queue.empty()) {
    const std::uint32_t v = queue.front();
    queue.pop_front();
    for (auto [w, shift] : out[v]) {
      const std::uint32_t want = (color[v] + shift) % r;
      if (color[w] == kUnset) {
        color[w] = want;
        queue.push_back(w);
      } else if (color[w] != want) {
        throw Error(ErrorKind::InconsistentColoring,
                    "vertex " + std::to_string(w) + " reached with colors " + std::to_string(color[w]) + " and " +
                        std::to_string(want));
      }
    }
  }
  for (std::size_t v = 0; v < n; ++v)
    if (color[v] == kUnset) throw Error(ErrorKind::InconsistentColoring, "closure graph is not connected");
  return color;
}

std::vector<std::vector<std::uint32_t>> naive_triangles(const CayleyComplex& cx) {
  const std::size_t n = cx.vertex_count;
  std::vector<std::vector<std::uint32_t>> nbr(n);
  for (const auto& e : cx.edges) nbr[e.u].push_back(e.v);
  for (auto& l : nbr) std::sort(l.begin(), l.end());
  auto has = [&](std::uint32_t a, std::uint32_t b) { return std::binary_search(nbr[a].begin(), nbr[a].end(), b); };
  std::vector<std::vector<std::uint32_t>> tri;
  for (const auto& e1 : cx.edges)
    for (const auto& e2 : cx.edges) {
      if (e2.u != e1.u || e2.v <= e1.v) continue;
      if (has(e1.v, e2.v)) tri.push_back({e1.u, e1.v, e2.v});
    }
  std::sort(tri.begin(), tri.end());
  return tri;
}

void write_edges_csv(std::ostream& os, const GroupClosure& closure) {
  os << "src,dst,color,generator_id\n";
  for (const auto& e : closure.edges) os << e.src << ',' << e.dst << ',' << e.color << ',' << e.generator << '\n';
}

void write_cells_csv(std::ostream& os, const CayleyComplex& cx, unsigned dim) {
  for (unsigned i = 0; i <= dim; ++i) os << (i ? ",v" : "v") << i;
  os << '\n';
  if (dim == 0) {
    for (std::size_t v = 0; v < cx.vertex_count; ++v) os << v << '\n';
    return;
  }
  if (dim == 1) {
    for (const auto& e : cx.edges) os << e.u << ',' << e.v << '\n';
    return;
  }
  if (dim >= cx.cells.size()) return;
  for (const auto& c : cx.cells[dim]) {
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
    os << '\n';
  }
}

void write_dot(std::ostream& os, const CayleyComplex& cx) {
  os << "graph cayley {\n";
  for (std::size_t v = 0; v < cx.vertex_count; ++v) {
    os << "  " << v;
    if (!cx.colors.empty()) os << " [color=" << cx.colors[v] << "]";
    os << ";\n";
  }
  for (const auto& e : cx.edges) {
    std::string ks;
    for (unsigned k = 1; k < cx.d; ++k)
      if (e.colors >> k & 1u) ks += (ks.empty() ? "" : ",") + std::to_string(k);
    os << "  " << e.u << " -- " << e.v << " [color=\"" << ks << "\", label=\"" << ks << "\"];\n";
  }
  os << "}\n";
}

}  // namespace ramanujan
