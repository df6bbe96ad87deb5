#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "ramanujan/projgroup.hpp"

namespace ramanujan {

/// Undirected edge {u, v} with u < v. Bit k of `colors` is set when some
/// color-k generator maps u to v; the reverse direction then has color d - k.
struct SkeletonEdge {
  std::uint32_t u;
  std::uint32_t v;
  std::uint32_t colors;

  friend bool operator==(const SkeletonEdge&, const SkeletonEdge&) = default;
};

struct CayleyComplex {
  unsigned d = 0;
  std::size_t vertex_count = 0;
  std::vector<SkeletonEdge> edges;  // sorted by (u, v)
  // cells[i] holds the i-cells for i >= 2, each a sorted tuple of i+1
  // vertices, the list sorted lexicographically. cells[0], cells[1] are empty.
  std::vector<std::vector<std::vector<std::uint32_t>>> cells;
  std::vector<std::uint32_t> colors;  // empty until assigned
  unsigned r = 0;

  /// Neighbors of v in increasing order.
  std::vector<std::uint32_t> neighbors(std::uint32_t v) const;
  std::size_t cell_count(unsigned dim) const;

  // CSR of the undirected skeleton, sorted neighbor lists.
  std::vector<std::uint32_t> adj_offsets;
  std::vector<std::uint32_t> adj;
};

/// The clique complex of the colored Cayley graph, cells up to `max_dim`
/// (1 gives the graph only). Requires 1 <= max_dim <= d - 1.
CayleyComplex build_complex(const GroupClosure& closure, unsigned d, unsigned max_dim);

/// BFS from the identity: color(dst) = color(src) + k mod r over every
/// directed edge. Throws InconsistentColoring on a clash.
std::vector<std::uint32_t> assign_colors(const GroupClosure& closure, unsigned r);

/// Triangles by scanning all vertex triples of the edge list; test oracle.
std::vector<std::vector<std::uint32_t>> naive_triangles(const CayleyComplex& cx);

/// `src,dst,color,generator_id` with a header row.
void write_edges_csv(std::ostream& os, const GroupClosure& closure);
/// Header `v0,...,v<dim>`, then one cell per row.
void write_cells_csv(std::ostream& os, const CayleyComplex& cx, unsigned dim);
/// Undirected graph. Nodes carry their color class; each edge carries the
/// colors of its u -> v direction as `color` and as label.
void write_dot(std::ostream& os, const CayleyComplex& cx);

}  // namespace ramanujan
