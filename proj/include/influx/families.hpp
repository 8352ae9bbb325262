#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "influx/graph.hpp"
#include "influx/matrix.hpp"

namespace influx {

/// Path 1 -> 2 -> ... -> n.
struct Line {
    std::size_t n = 1;
};
/// Line plus the closing edge n -> 1.
struct Cycle {
    std::size_t n = 1;
};
/// Jordan block: a loop of weight a on every vertex and j -> j+1 of weight 1.
struct Jordan {
    std::size_t n = 1;
    double a = 0.0;
};
/// Center joined both ways to n leaves. Leaves are 1..n; the center is
/// vertex n+1 internally and is labelled 0 in reports.
struct Star {
    std::size_t n = 1;
};

using FamilySpec = std::variant<Line, Cycle, Jordan, Star>;

/// Throws DomainError for n = 0 or a non-finite Jordan weight.
void validate(const FamilySpec& spec);
std::string family_name(const FamilySpec& spec);
std::size_t vertex_count(const FamilySpec& spec);

/// Printed label of each vertex 1..N (index v-1). Identity except for the
/// star center, which prints as 0.
std::vector<long long> vertex_labels(const FamilySpec& spec);

DirectInfluenceGraph build(const FamilySpec& spec);

/// T = e_+^{lambda D} / e_+^lambda from hand-derived formulas, without
/// evaluating any matrix function. Every entry excludes the k = 0 term of the
/// exponential series.
Matrix closed_form_pwp(const FamilySpec& spec, double lambda);

/// Offset s maximizing T_{j+s,j} on a line: floor(lambda) if lambda >= 1,
/// otherwise 1.
std::size_t line_argmax_offset(double lambda);

}  // namespace influx
