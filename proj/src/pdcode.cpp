#include "knotcensus/pdcode.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace knotcensus {

const char* code_error_name(CodeError e) {
    switch (e) {
        case CodeError::None: return "None";
        case CodeError::EmptyCode: return "EmptyCode";
        case CodeError::LabelOutOfRange: return "LabelOutOfRange";
        case CodeError::DuplicateLabel: return "DuplicateLabel";
        case CodeError::NonAdjacentSignViolation: return "NonAdjacentSignViolation";
    }
    return "?";
}

Validation validate(const PdCode& code) {
    const int n = code.crossings();
    if (n == 0) return {CodeError::EmptyCode, "code has no crossings"};
    const int ne = 2 * n;
    // seen[2(e-1)] for +e, seen[2(e-1)+1] for -e
    std::vector<char> seen(static_cast<size_t>(2 * ne), 0);
    for (int v = 0; v < n; ++v) {
        for (int k = 0; k < 4; ++k) {
            SignedEdge e = code.verts[v][k];
            int a = std::abs(e);
            if (a < 1 || a > ne) {
                return {CodeError::LabelOutOfRange,
                        "label " + std::to_string(e) + " at vertex " + std::to_string(v) +
                            " slot " + std::to_string(k) + " outside +-1..+-" + std::to_string(ne)};
            }
            int idx = 2 * (a - 1) + (e < 0 ? 1 : 0);
            if (seen[idx]) {
                return {CodeError::DuplicateLabel,
                        "label " + std::to_string(e) + " appears more than once"};
            }
            seen[idx] = 1;
        }
    }
    // 4n slots, 4n distinct in-range labels: every signed label appears once.
    for (int v = 0; v < n; ++v) {
        const Quad& q = code.verts[v];
        if ((q[0] > 0) == (q[2] > 0) || (q[1] > 0) == (q[3] > 0)) {
            return {CodeError::NonAdjacentSignViolation,
                    "vertex " + std::to_string(v) + ": opposite slots carry equal signs"};
        }
    }
    return {};
}

PdIndex::PdIndex(const PdCode& code) : table_(static_cast<size_t>(2 * code.edge_count())) {
    for (int v = 0; v < code.crossings(); ++v)
        for (int k = 0; k < 4; ++k) {
            SignedEdge e = code.verts[v][k];
            table_[slot_index(e)] = {v, k};
        }
}

SignedEdge successor(const PdCode& code, SignedEdge e) {
    PdIndex idx(code);
    EdgePos p = idx.pos(e);
    return -code.verts[p.vertex][(p.slot + 3) & 3];
}

bool label_less(SignedEdge a, SignedEdge b) {
    int aa = std::abs(a), ab = std::abs(b);
    if (aa != ab) return aa < ab;
    return a > b;
}

std::vector<std::vector<SignedEdge>> faces(const PdCode& code) {
    PdIndex idx(code);
    const int ne = code.edge_count();
    std::vector<char> done(static_cast<size_t>(2 * ne), 0);
    auto bit = [](SignedEdge e) {
        return 2 * (std::abs(e) - 1) + (e < 0 ? 1 : 0);
    };
    std::vector<std::vector<SignedEdge>> out;
    // Scanning labels in label_less order makes each orbit start at its
    // smallest label and orders faces by that label.
    for (int a = 1; a <= ne; ++a) {
        for (SignedEdge e : {a, -a}) {
            if (done[bit(e)]) continue;
            std::vector<SignedEdge> face;
            SignedEdge cur = e;
            do {
                face.push_back(cur);
                done[bit(cur)] = 1;
                EdgePos p = idx.pos(cur);
                cur = -code.verts[p.vertex][(p.slot + 3) & 3];
            } while (cur != e);
            out.push_back(std::move(face));
        }
    }
    return out;
}

int genus(const PdCode& code) {
    const int v = code.crossings();
    const int e = code.edge_count();
    const int f = static_cast<int>(faces(code).size());
    const int chi = v - e + f;
    if ((2 - chi) % 2 != 0) throw std::domain_error("odd Euler characteristic defect");
    return (2 - chi) / 2;
}

bool is_planar(const PdCode& code) { return genus(code) == 0; }

std::vector<std::vector<int>> components(const PdCode& code) {
    PdIndex idx(code);
    const int ne = code.edge_count();
    std::vector<char> done(static_cast<size_t>(ne + 1), 0);
    std::vector<std::vector<int>> out;
    for (int e = 1; e <= ne; ++e) {
        if (done[e]) continue;
        std::vector<int> comp;
        int cur = e;
        do {
            comp.push_back(cur);
            done[cur] = 1;
            EdgePos head = idx.pos(cur);  // +cur: strand arrives here
            SignedEdge next = code.verts[head.vertex][(head.slot + 2) & 3];
            // Opposite slots have opposite signs, so `next` is a tail label.
            cur = -next;
        } while (cur != e);
        out.push_back(std::move(comp));
    }
    return out;
}

PdCode normalized(const PdCode& code) {
    PdIndex idx(code);
    const int n = code.crossings();
    const int ne = code.edge_count();
    std::vector<int> new_edge(static_cast<size_t>(ne + 1), 0);
    std::vector<int> new_vert(static_cast<size_t>(n), -1);
    int next_edge = 1;
    int next_vert = 0;
    auto visit_vertex = [&](int v) {
        if (new_vert[v] < 0) new_vert[v] = next_vert++;
    };
    for (const auto& comp : components(code)) {
        // Number the tail vertex first so edge 1 leaves vertex 1.
        visit_vertex(idx.pos(-comp.front()).vertex);
        for (int e : comp) {
            new_edge[e] = next_edge++;
            visit_vertex(idx.pos(e).vertex);
        }
    }
    PdCode out;
    out.verts.resize(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) {
        Quad q;
        for (int k = 0; k < 4; ++k) {
            SignedEdge e = code.verts[v][k];
            q[k] = e > 0 ? new_edge[e] : -new_edge[-e];
        }
        // Rotate the smallest label into slot 0; rotation keeps slot
        // opposition and the counterclockwise order intact.
        int best = 0;
        for (int k = 1; k < 4; ++k)
            if (label_less(q[k], q[best])) best = k;
        Quad r;
        for (int k = 0; k < 4; ++k) r[k] = q[(best + k) & 3];
        out.verts[static_cast<size_t>(new_vert[v])] = r;
    }
    return out;
}

std::string serialize(const PdCode& code) {
    std::ostringstream os;
    os << code.crossings() << ":";
    for (const Quad& q : code.verts) {
        os << " (" << q[0] << "," << q[1] << "," << q[2] << "," << q[3] << ")";
    }
    return os.str();
}

namespace {

[[noreturn]] void parse_fail(const std::string& what, size_t pos) {
    throw std::invalid_argument("pd-code parse error at position " + std::to_string(pos) + ": " +
                                what);
}

}  // namespace

PdCode parse_pdcode(const std::string& line) {
    size_t i = 0;
    auto skip_ws = [&] {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    };
    auto read_int = [&]() -> int {
        skip_ws();
        size_t start = i;
        bool neg = false;
        if (i < line.size() && (line[i] == '+' || line[i] == '-')) {
            neg = line[i] == '-';
            ++i;
        }
        if (i >= line.size() || !isdigit(static_cast<unsigned char>(line[i])))
            parse_fail("expected integer", start);
        long v = 0;
        while (i < line.size() && isdigit(static_cast<unsigned char>(line[i]))) {
            v = v * 10 + (line[i] - '0');
            if (v > 1000000) parse_fail("integer too large", start);
            ++i;
        }
        return neg ? static_cast<int>(-v) : static_cast<int>(v);
    };
    auto expect = [&](char c) {
        skip_ws();
        if (i >= line.size() || line[i] != c)
            parse_fail(std::string("expected '") + c + "'", i);
        ++i;
    };

    int n = read_int();
    if (n <= 0) parse_fail("crossing count must be positive", 0);
    expect(':');
    PdCode code;
    code.verts.reserve(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) {
        expect('(');
        Quad q;
        for (int k = 0; k < 4; ++k) {
            q[k] = read_int();
            if (q[k] == 0) parse_fail("label 0 is not allowed", i);
            if (k < 3) expect(',');
        }
        expect(')');
        code.verts.push_back(q);
    }
    skip_ws();
    if (i != line.size()) parse_fail("trailing characters", i);
    Validation val = validate(code);
    if (!val.ok())
        throw std::invalid_argument(std::string("invalid pd-code (") + code_error_name(val.error) +
                                    "): " + val.detail);
    return code;
}

}  // namespace knotcensus
