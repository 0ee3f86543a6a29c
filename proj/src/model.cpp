#include "sofic/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include <json.hpp>

namespace sofic::model {

Bases::Bases(std::vector<int> m) : m_(std::move(m)) {
    if (m_.empty()) throw SpecError("bases: at least one base is required");
    int prev = 2;
    for (std::size_t i = 0; i < m_.size(); ++i) {
        if (m_[i] < 2)
            throw SpecError("bases: m_" + std::to_string(i + 1) + " = " + std::to_string(m_[i]) +
                            " is below 2");
        if (m_[i] < prev)
            throw SpecError("bases: sequence is not nondecreasing at position " +
                            std::to_string(i + 1));
        prev = m_[i];
    }
}

double Bases::exponent(int i) const {
    if (i < 1 || i >= dimension()) throw SpecError("exponent index out of range");
    return std::log(static_cast<double>(base(i))) / std::log(static_cast<double>(base(i + 1)));
}

std::vector<double> Bases::weights() const {
    int r = dimension();
    double lm1 = std::log(static_cast<double>(base(1)));
    std::vector<double> w(static_cast<std::size_t>(r), 0.0);
    // w_1 = log m1/log mr, w_k = log m1/log m_{r-k+1} - log m1/log m_{r-k+2}
    w[0] = lm1 / std::log(static_cast<double>(base(r)));
    for (int k = 2; k <= r; ++k) {
        int lo = r - k + 1;
        w[static_cast<std::size_t>(k - 1)] =
            lm1 / std::log(static_cast<double>(base(lo))) -
            lm1 / std::log(static_cast<double>(base(lo + 1)));
    }
    return w;
}

long long Bases::prefix_count(int level) const {
    long long n = 1;
    for (int i = 1; i <= level; ++i) n *= base(i);
    return n;
}

int encode_prefix(const Bases& bases, const std::vector<int>& digits, int level) {
    int id = 0;
    int stride = 1;
    for (int i = 0; i < level; ++i) {
        id += digits[static_cast<std::size_t>(i)] * stride;
        stride *= bases.base(i + 1);
    }
    return id;
}

std::vector<int> decode_prefix(const Bases& bases, int id, int level) {
    std::vector<int> digits(static_cast<std::size_t>(level), 0);
    for (int i = 0; i < level; ++i) {
        digits[static_cast<std::size_t>(i)] = id % bases.base(i + 1);
        id /= bases.base(i + 1);
    }
    return digits;
}

void validate(const LabeledDigraph& g) {
    int r = g.bases.dimension();
    if (g.vertex_count < 0) throw SpecError("vertices: count must be nonnegative");
    std::set<std::pair<int, std::vector<int>>> seen;
    for (const Edge& e : g.edges) {
        if (e.from < 0 || e.from >= g.vertex_count || e.to < 0 || e.to >= g.vertex_count)
            throw SpecError("edge endpoint out of range: " + std::to_string(e.from) + " -> " +
                            std::to_string(e.to));
        if (static_cast<int>(e.label.digits.size()) != r)
            throw SpecError("edge label length differs from the number of bases");
        for (int i = 0; i < r; ++i) {
            int d = e.label.digits[static_cast<std::size_t>(i)];
            if (d < 0 || d >= g.bases.base(i + 1))
                throw SpecError("digit " + std::to_string(d) + " out of range for base m_" +
                                std::to_string(i + 1) + " on edge from vertex " +
                                std::to_string(e.from));
        }
        if (!seen.insert({e.from, e.label.digits}).second) {
            std::ostringstream os;
            os << "right-resolving violation: vertex " << e.from
               << " has two outgoing edges with label (";
            for (std::size_t i = 0; i < e.label.digits.size(); ++i) {
                if (i) os << ",";
                os << e.label.digits[i];
            }
            os << ")";
            throw SpecError(os.str());
        }
    }
}

LabeledDigraph parse_spec(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw SpecError(std::string("malformed document: ") + e.what());
    }
    if (!doc.is_object()) throw SpecError("malformed document: top level must be an object");
    if (!doc.contains("bases") || !doc["bases"].is_array())
        throw SpecError("missing or malformed \"bases\"");
    if (!doc.contains("vertices") || !doc["vertices"].is_number_integer())
        throw SpecError("missing or malformed \"vertices\"");
    if (!doc.contains("edges") || !doc["edges"].is_array())
        throw SpecError("missing or malformed \"edges\"");

    LabeledDigraph g;
    std::vector<int> m;
    for (const auto& v : doc["bases"]) {
        if (!v.is_number_integer()) throw SpecError("bases entries must be integers");
        m.push_back(v.get<int>());
    }
    g.bases = Bases(m);
    g.vertex_count = doc["vertices"].get<int>();
    for (const auto& je : doc["edges"]) {
        if (!je.is_object() || !je.contains("from") || !je.contains("to") || !je.contains("label"))
            throw SpecError("each edge needs \"from\", \"to\" and \"label\"");
        Edge e;
        e.from = je["from"].get<int>();
        e.to = je["to"].get<int>();
        if (!je["label"].is_array()) throw SpecError("edge label must be an array of digits");
        for (const auto& d : je["label"]) e.label.digits.push_back(d.get<int>());
        g.edges.push_back(std::move(e));
    }
    validate(g);
    return g;
}

std::string serialize(const LabeledDigraph& g) {
    nlohmann::ordered_json doc;
    doc["bases"] = g.bases.values();
    doc["vertices"] = g.vertex_count;
    doc["edges"] = nlohmann::ordered_json::array();
    for (const Edge& e : g.edges) {
        nlohmann::ordered_json je;
        je["from"] = e.from;
        je["to"] = e.to;
        je["label"] = e.label.digits;
        doc["edges"].push_back(std::move(je));
    }
    return doc.dump(2) + "\n";
}

LabeledDigraph forward_prune(const LabeledDigraph& g) {
    std::vector<char> alive(static_cast<std::size_t>(g.vertex_count), 1);
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<int> outdeg(static_cast<std::size_t>(g.vertex_count), 0);
        for (const Edge& e : g.edges) {
            if (alive[static_cast<std::size_t>(e.from)] && alive[static_cast<std::size_t>(e.to)])
                ++outdeg[static_cast<std::size_t>(e.from)];
        }
        for (int v = 0; v < g.vertex_count; ++v) {
            if (alive[static_cast<std::size_t>(v)] && outdeg[static_cast<std::size_t>(v)] == 0) {
                alive[static_cast<std::size_t>(v)] = 0;
                changed = true;
            }
        }
    }
    std::vector<int> remap(static_cast<std::size_t>(g.vertex_count), -1);
    LabeledDigraph out;
    out.bases = g.bases;
    int next = 0;
    for (int v = 0; v < g.vertex_count; ++v) {
        if (alive[static_cast<std::size_t>(v)]) remap[static_cast<std::size_t>(v)] = next++;
    }
    out.vertex_count = next;
    for (const Edge& e : g.edges) {
        int f = remap[static_cast<std::size_t>(e.from)];
        int t = remap[static_cast<std::size_t>(e.to)];
        if (f >= 0 && t >= 0) out.edges.push_back({f, t, e.label});
    }
    return out;
}

NonnegMatrix restricted_adjacency(const LabeledDigraph& g, const std::vector<int>& prefix) {
    int r = g.bases.dimension();
    if (static_cast<int>(prefix.size()) != r - 1)
        throw SpecError("restricted_adjacency: prefix length must be r-1");
    for (int i = 0; i < r - 1; ++i) {
        int d = prefix[static_cast<std::size_t>(i)];
        if (d < 0 || d >= g.bases.base(i + 1))
            throw SpecError("restricted_adjacency: prefix digit out of range");
    }
    NonnegMatrix a(static_cast<std::size_t>(g.vertex_count),
                   static_cast<std::size_t>(g.vertex_count));
    for (const Edge& e : g.edges) {
        bool match = true;
        for (int i = 0; i < r - 1; ++i) {
            if (e.label.digits[static_cast<std::size_t>(i)] != prefix[static_cast<std::size_t>(i)]) {
                match = false;
                break;
            }
        }
        if (match)
            a(static_cast<std::size_t>(e.from), static_cast<std::size_t>(e.to)) += 1.0;
    }
    return a;
}

NonnegMatrix total_adjacency(const LabeledDigraph& g) {
    NonnegMatrix a(static_cast<std::size_t>(g.vertex_count),
                   static_cast<std::size_t>(g.vertex_count));
    for (const Edge& e : g.edges)
        a(static_cast<std::size_t>(e.from), static_cast<std::size_t>(e.to)) += 1.0;
    return a;
}

int primitivity_exponent(const NonnegMatrix& a) {
    std::size_t n = a.rows();
    if (n == 0 || a.rows() != a.cols()) return 0;
    // Boolean reachability powers; entries only record nonzero-ness.
    auto boolean = [n](const Matrix& m) {
        Matrix b(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) b(i, j) = m(i, j) > 0.0 ? 1.0 : 0.0;
        return b;
    };
    Matrix p = boolean(a);
    long long bound = static_cast<long long>(n - 1) * static_cast<long long>(n - 1) + 1;
    for (long long k = 1; k <= bound; ++k) {
        if (p.all_positive()) return static_cast<int>(k);
        p = boolean(p * boolean(a));
    }
    return 0;
}

bool is_primitive(const NonnegMatrix& a) { return primitivity_exponent(a) > 0; }

}  // namespace sofic::model
