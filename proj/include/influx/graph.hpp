#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "influx/matrix.hpp"

namespace influx {

/// 1-based vertex label, as used in files and reports.
using Vertex = std::size_t;

/// A direct influence of `source` on `target`.
struct Edge {
    Vertex source = 0;
    Vertex target = 0;
    double weight = 0.0;

    bool operator==(const Edge&) const = default;
};

/// Weighted digraph over vertices 1..n without multiple edges. Self-loops are
/// allowed. Edges are kept sorted by (source, target), so two graphs built
/// from the same edge set compare equal regardless of input order.
class DirectInfluenceGraph {
public:
    /// Validates indices and rejects repeated (source, target) pairs.
    DirectInfluenceGraph(std::size_t n, std::vector<Edge> edges);

    std::size_t size() const noexcept { return n_; }
    std::span<const Edge> edges() const noexcept { return edges_; }
    /// Outgoing edges of v, ordered by target.
    std::span<const Edge> out_edges(Vertex v) const;
    std::size_t out_degree(Vertex v) const { return out_edges(v).size(); }

    bool operator==(const DirectInfluenceGraph&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::size_t> offsets_;  // CSR offsets into edges_, size n+1
};

/// Matrix of direct influences: row = influenced vertex, column = influencing
/// vertex, so entry (i, j) holds the weight of edge j -> i.
using DirectInfluenceMatrix = Matrix;

/// Reads "source,target,weight" lines. '#' lines and blank lines are skipped.
/// The vertex count is the largest index seen, or `n` if that is larger.
DirectInfluenceGraph parse_edge_list(std::istream& in, std::optional<std::size_t> n = {});
DirectInfluenceGraph parse_edge_list(const std::string& text, std::optional<std::size_t> n = {});
DirectInfluenceGraph read_edge_list(const std::filesystem::path& path,
                                    std::optional<std::size_t> n = {});

/// Canonical edge-list form; weights use the shortest round-trip decimal.
void write_edge_list(std::ostream& out, const DirectInfluenceGraph& g);

/// Matrix file: a line with n, then n rows of n comma-separated reals.
DirectInfluenceMatrix parse_matrix(std::istream& in);
DirectInfluenceMatrix read_matrix(const std::filesystem::path& path);
void write_matrix(std::ostream& out, const Matrix& m);

DirectInfluenceMatrix to_matrix(const DirectInfluenceGraph& g);
/// Inverse of to_matrix: every nonzero entry becomes an edge.
DirectInfluenceGraph from_matrix(const DirectInfluenceMatrix& d);

/// Same vertices, every edge direction flipped.
DirectInfluenceGraph reversed(const DirectInfluenceGraph& g);

/// Web-graph normalization: D(i, j) = 1/out(j) for each edge j -> i, ignoring
/// weights. Columns of vertices without out-edges stay zero.
DirectInfluenceMatrix web_normalize(const DirectInfluenceGraph& g);

/// True iff every entry is >= -tol and every column sums to 1 within tol.
bool is_column_stochastic(const Matrix& d, double tol);

/// Shortest decimal that parses back to exactly x.
std::string format_real(double x);

}  // namespace influx
