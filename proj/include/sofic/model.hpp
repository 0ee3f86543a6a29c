#pragma once

// Input data model for sofic presentations: expansion bases, labeled digraphs,
// validation, forward pruning, and restricted adjacency extraction.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "sofic/matrix.hpp"

namespace sofic::model {

struct SpecError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Expansion bases m_1 <= m_2 <= ... <= m_r with m_1 >= 2, plus the derived
// exponents a_i = log_{m_{i+1}} m_i and the weight vector they induce.
class Bases {
public:
    Bases() = default;
    explicit Bases(std::vector<int> m);

    int dimension() const { return static_cast<int>(m_.size()); }
    int base(int i) const { return m_.at(static_cast<std::size_t>(i) - 1); }  // 1-indexed
    const std::vector<int>& values() const { return m_; }

    // a_i = log_{m_{i+1}} m_i, in (0, 1], for 1 <= i <= r-1.
    double exponent(int i) const;

    // (log m1/log mr, log m1/log m_{r-1} - log m1/log mr, ..., 1 - log m1/log m2)
    std::vector<double> weights() const;

    // Number of digit prefixes of length `level`, i.e. |D_level| = m_1 ... m_level.
    long long prefix_count(int level) const;

private:
    std::vector<int> m_;
};

// An element of D_r: one digit per axis, digit i in {0, ..., m_i - 1}.
struct Label {
    std::vector<int> digits;

    bool operator==(const Label& o) const { return digits == o.digits; }
};

struct Edge {
    int from = 0;
    int to = 0;
    Label label;
};

// Right-resolving labeled digraph; the presentation of a sofic shift.
struct LabeledDigraph {
    Bases bases;
    int vertex_count = 0;
    std::vector<Edge> edges;

    int dimension() const { return bases.dimension(); }
};

// Mixed-radix encoding of digit prefixes. Digit 1 is the least significant
// position, so a level-j prefix id embeds into every deeper level.
int encode_prefix(const Bases& bases, const std::vector<int>& digits, int level);
std::vector<int> decode_prefix(const Bases& bases, int id, int level);

// Parses and validates a presentation document (see README for the schema).
// Throws SpecError on malformed input, digit range violations, non-monotone
// bases, or two edges sharing a source vertex and a full label.
LabeledDigraph parse_spec(const std::string& text);

// Inverse of parse_spec up to whitespace; parse(serialize(G)) == G.
std::string serialize(const LabeledDigraph& g);

// Re-runs the structural checks on an already-built graph.
void validate(const LabeledDigraph& g);

// Maximal subgraph in which every vertex has out-degree >= 1, obtained by
// repeatedly deleting out-degree-0 vertices. Every finite path in the result
// extends to an infinite one, which is what makes finite word counts match
// restrictions of the shift. The result may be empty.
LabeledDigraph forward_prune(const LabeledDigraph& g);

// A_s for a prefix s in D_{r-1}: entry (i,j) counts edges i -> j whose label
// starts with s. Absent prefixes yield the zero matrix.
NonnegMatrix restricted_adjacency(const LabeledDigraph& g, const std::vector<int>& prefix);

// A = sum over s in D_{r-1} of A_s; the plain edge-count adjacency matrix.
NonnegMatrix total_adjacency(const LabeledDigraph& g);

// True iff some power A^k, k <= (n-1)^2 + 1, has all entries positive.
// Boolean matrix powers only; the Wielandt bound caps the search.
bool is_primitive(const NonnegMatrix& a);

// Smallest d <= (n-1)^2 + 1 with A^d > 0, or 0 if A is not primitive.
int primitivity_exponent(const NonnegMatrix& a);

}  // namespace sofic::model
