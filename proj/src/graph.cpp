#include "influx/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>

#include "influx/error.hpp"

namespace influx {

namespace {

using Kind = ParseError::Kind;

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_commas(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        fields.push_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

std::string location(std::size_t line) { return "line " + std::to_string(line) + ": "; }

Vertex parse_vertex(std::string_view field, std::size_t line) {
    long long value = 0;
    const auto* end = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(field.data(), end, value);
    if (ec == std::errc::result_out_of_range) {
        throw ParseError(Kind::IndexOutOfRange, line,
                         location(line) + "vertex index '" + std::string(field) + "' out of range");
    }
    if (ec != std::errc() || ptr != end) {
        throw ParseError(Kind::MalformedLine, line,
                         location(line) + "'" + std::string(field) + "' is not a vertex index");
    }
    if (value < 1) {
        throw ParseError(Kind::IndexOutOfRange, line,
                         location(line) + "vertex index " + std::to_string(value) +
                             " is below 1");
    }
    return static_cast<Vertex>(value);
}

double parse_real(std::string_view field, std::size_t line) {
    double value = 0.0;
    const auto* end = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(field.data(), end, value);
    if (ptr != end || field.empty() ||
        (ec != std::errc() && ec != std::errc::result_out_of_range)) {
        throw ParseError(Kind::MalformedLine, line,
                         location(line) + "'" + std::string(field) + "' is not a real number");
    }
    if (ec == std::errc::result_out_of_range || !std::isfinite(value)) {
        throw ParseError(Kind::NonFiniteWeight, line,
                         location(line) + "weight '" + std::string(field) + "' is not finite");
    }
    return value;
}

bool skippable(std::string_view line) { return line.empty() || line.front() == '#'; }

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(Kind::MalformedLine, 0, "cannot open '" + path.string() + "'");
    return in;
}

}  // namespace

DirectInfluenceGraph::DirectInfluenceGraph(std::size_t n, std::vector<Edge> edges)
    : n_(n), edges_(std::move(edges)) {
    for (const Edge& e : edges_) {
        if (e.source < 1 || e.source > n_ || e.target < 1 || e.target > n_) {
            throw ParseError(Kind::IndexOutOfRange, 0,
                             "edge " + std::to_string(e.source) + "->" +
                                 std::to_string(e.target) + " outside vertices 1.." +
                                 std::to_string(n_));
        }
        if (!std::isfinite(e.weight)) {
            throw ParseError(Kind::NonFiniteWeight, 0,
                             "edge " + std::to_string(e.source) + "->" +
                                 std::to_string(e.target) + " has a non-finite weight");
        }
    }
    std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
        return a.source != b.source ? a.source < b.source : a.target < b.target;
    });
    const auto dup = std::adjacent_find(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
        return a.source == b.source && a.target == b.target;
    });
    if (dup != edges_.end()) {
        throw ParseError(Kind::DuplicateEdge, 0,
                         "duplicate edge " + std::to_string(dup->source) + "->" +
                             std::to_string(dup->target));
    }
    offsets_.assign(n_ + 1, 0);
    for (const Edge& e : edges_) ++offsets_[e.source];
    for (std::size_t v = 1; v <= n_; ++v) offsets_[v] += offsets_[v - 1];
}

std::span<const Edge> DirectInfluenceGraph::out_edges(Vertex v) const {
    if (v < 1 || v > n_) {
        throw ParseError(Kind::IndexOutOfRange, 0, "vertex " + std::to_string(v) + " out of range");
    }
    return std::span<const Edge>(edges_).subspan(offsets_[v - 1], offsets_[v] - offsets_[v - 1]);
}

DirectInfluenceGraph parse_edge_list(std::istream& in, std::optional<std::size_t> n) {
    std::vector<Edge> edges;
    std::vector<std::size_t> lines;
    std::size_t max_vertex = 0;
    std::string raw;
    for (std::size_t line_no = 1; std::getline(in, raw); ++line_no) {
        const auto line = trim(raw);
        if (skippable(line)) continue;
        const auto fields = split_commas(line);
        if (fields.size() != 3) {
            throw ParseError(Kind::MalformedLine, line_no,
                             location(line_no) + "expected 'source,target,weight'");
        }
        Edge e{parse_vertex(fields[0], line_no), parse_vertex(fields[1], line_no),
               parse_real(fields[2], line_no)};
        max_vertex = std::max({max_vertex, e.source, e.target});
        edges.push_back(e);
        lines.push_back(line_no);
    }

    // Report duplicates against the line of their second occurrence.
    std::vector<std::size_t> order(edges.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const Edge& x = edges[a];
        const Edge& y = edges[b];
        return x.source != y.source ? x.source < y.source : x.target < y.target;
    });
    for (std::size_t k = 1; k < order.size(); ++k) {
        const Edge& prev = edges[order[k - 1]];
        const Edge& cur = edges[order[k]];
        if (prev.source == cur.source && prev.target == cur.target) {
            const std::size_t line_no = std::max(lines[order[k - 1]], lines[order[k]]);
            throw ParseError(Kind::DuplicateEdge, line_no,
                             location(line_no) + "duplicate edge " + std::to_string(cur.source) +
                                 "->" + std::to_string(cur.target));
        }
    }

    const std::size_t count = std::max(max_vertex, n.value_or(0));
    if (count == 0) {
        throw ParseError(Kind::MalformedLine, 0, "edge list is empty and no vertex count was given");
    }
    return DirectInfluenceGraph(count, std::move(edges));
}

DirectInfluenceGraph parse_edge_list(const std::string& text, std::optional<std::size_t> n) {
    std::istringstream in(text);
    return parse_edge_list(in, n);
}

DirectInfluenceGraph read_edge_list(const std::filesystem::path& path,
                                    std::optional<std::size_t> n) {
    auto in = open_input(path);
    return parse_edge_list(in, n);
}

std::string format_real(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    (void)ec;
    return std::string(buf, ptr);
}

void write_edge_list(std::ostream& out, const DirectInfluenceGraph& g) {
    for (const Edge& e : g.edges()) {
        out << e.source << ',' << e.target << ',' << format_real(e.weight) << '\n';
    }
}

DirectInfluenceMatrix parse_matrix(std::istream& in) {
    std::string raw;
    std::size_t line_no = 0;
    auto next_line = [&]() -> std::optional<std::string_view> {
        while (std::getline(in, raw)) {
            ++line_no;
            const auto line = trim(raw);
            if (!skippable(line)) return line;
        }
        return std::nullopt;
    };

    const auto header = next_line();
    if (!header) throw ParseError(Kind::MalformedLine, 0, "matrix file is empty");
    const std::size_t n = parse_vertex(*header, line_no);

    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto line = next_line();
        if (!line) {
            throw ParseError(Kind::MalformedLine, line_no + 1,
                             "matrix file ends after " + std::to_string(i) + " of " +
                                 std::to_string(n) + " rows");
        }
        const auto fields = split_commas(*line);
        if (fields.size() != n) {
            throw ParseError(Kind::MalformedLine, line_no,
                             location(line_no) + "expected " + std::to_string(n) +
                                 " values, found " + std::to_string(fields.size()));
        }
        for (std::size_t j = 0; j < n; ++j) m(i, j) = parse_real(fields[j], line_no);
    }
    if (next_line()) {
        throw ParseError(Kind::MalformedLine, line_no,
                         location(line_no) + "extra row after " + std::to_string(n) + " rows");
    }
    return m;
}

DirectInfluenceMatrix read_matrix(const std::filesystem::path& path) {
    auto in = open_input(path);
    return parse_matrix(in);
}

void write_matrix(std::ostream& out, const Matrix& m) {
    out << m.rows() << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j > 0) out << ',';
            out << format_real(m(i, j));
        }
        out << '\n';
    }
}

DirectInfluenceMatrix to_matrix(const DirectInfluenceGraph& g) {
    Matrix d(g.size(), g.size());
    for (const Edge& e : g.edges()) d(e.target - 1, e.source - 1) = e.weight;
    return d;
}

DirectInfluenceGraph from_matrix(const DirectInfluenceMatrix& d) {
    if (!d.square()) throw DimensionMismatch("from_matrix: matrix must be square");
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < d.rows(); ++i)
        for (std::size_t j = 0; j < d.cols(); ++j)
            if (d(i, j) != 0.0) edges.push_back({j + 1, i + 1, d(i, j)});
    return DirectInfluenceGraph(d.rows(), std::move(edges));
}

DirectInfluenceGraph reversed(const DirectInfluenceGraph& g) {
    std::vector<Edge> edges;
    edges.reserve(g.edges().size());
    for (const Edge& e : g.edges()) edges.push_back({e.target, e.source, e.weight});
    return DirectInfluenceGraph(g.size(), std::move(edges));
}

DirectInfluenceMatrix web_normalize(const DirectInfluenceGraph& g) {
    Matrix d(g.size(), g.size());
    for (Vertex j = 1; j <= g.size(); ++j) {
        const auto out = g.out_edges(j);
        for (const Edge& e : out) d(e.target - 1, j - 1) = 1.0 / static_cast<double>(out.size());
    }
    return d;
}

bool is_column_stochastic(const Matrix& d, double tol) {
    for (std::size_t j = 0; j < d.cols(); ++j) {
        double sum = 0.0;
        for (std::size_t i = 0; i < d.rows(); ++i) {
            if (d(i, j) < -tol) return false;
            sum += d(i, j);
        }
        if (std::abs(sum - 1.0) > tol) return false;
    }
    return true;
}

}  // namespace influx
