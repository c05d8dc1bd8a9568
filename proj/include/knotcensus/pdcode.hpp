// Planar diagram codes for link shadows.
//
// A pd-code with n crossings is a list of n quadruples of signed edge labels.
// Labels run over {+-1, ..., +-2n} and each signed label appears exactly once.
// Slots of a quadruple are cyclically ordered counterclockwise; in every
// quadruple the two labels at opposite slots (0/2 and 1/3) carry opposite
// signs.  +e marks the head of edge e (the strand arrives at that slot), -e
// the tail.  A strand entering at slot k leaves at slot k+2 mod 4.

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace knotcensus {

using SignedEdge = int;  // nonzero; |e| is the edge label
using Quad = std::array<SignedEdge, 4>;

struct PdCode {
    std::vector<Quad> verts;

    int crossings() const { return static_cast<int>(verts.size()); }
    int edge_count() const { return 2 * crossings(); }

    bool operator==(const PdCode& o) const { return verts == o.verts; }
};

enum class CodeError {
    None,
    EmptyCode,
    LabelOutOfRange,
    DuplicateLabel,
    NonAdjacentSignViolation,
};

struct Validation {
    CodeError error = CodeError::None;
    std::string detail;

    bool ok() const { return error == CodeError::None; }
    explicit operator bool() const { return ok(); }
};

const char* code_error_name(CodeError e);

Validation validate(const PdCode& code);

// Position of a signed label: verts[vertex][slot] == label.
struct EdgePos {
    int vertex = -1;
    int slot = -1;
};

// Lookup table from signed label to its position.  Index layout:
// label +e -> 2(e-1), label -e -> 2(e-1)+1.
class PdIndex {
  public:
    explicit PdIndex(const PdCode& code);
    EdgePos pos(SignedEdge e) const { return table_[slot_index(e)]; }

  private:
    static int slot_index(SignedEdge e) {
        int a = e > 0 ? e : -e;
        return 2 * (a - 1) + (e < 0 ? 1 : 0);
    }
    std::vector<EdgePos> table_;
};

// Order on signed labels used wherever a starting point must be picked
// deterministically: +1 < -1 < +2 < -2 < ...
bool label_less(SignedEdge a, SignedEdge b);

// Face successor: s(e) = -(label immediately preceding e in its quadruple's
// cyclic order).  Faces are the orbits of s.
SignedEdge successor(const PdCode& code, SignedEdge e);

// Orbits of the successor map.  Faces are ordered by their smallest label
// (smallest = lowest |e|, ties broken + before -) and each face is rotated to
// start at that label.
std::vector<std::vector<SignedEdge>> faces(const PdCode& code);

// 2 - 2g = V - E + F.  Throws std::domain_error if V - E + F is odd (cannot
// happen for valid codes; guards corrupted input).  Disconnected gluings come
// out with g < 0, so `genus(code) == 0` doubles as the planarity test.
int genus(const PdCode& code);

bool is_planar(const PdCode& code);

// Edge labels of each link component in traversal order.  A strand entering a
// crossing at slot k continues from slot k+2 mod 4.  Components are listed in
// order of their smallest edge label and start at that edge.
std::vector<std::vector<int>> components(const PdCode& code);

// Relabel edges 1..2n in traversal order (component by component, components
// ordered by current smallest edge label) and renumber vertices in order of
// first visit, so edge 1 leaves vertex 1.  Quadruples are rotated to put the
// smallest label in slot 0.  The result is isomorphic to the input.
PdCode normalized(const PdCode& code);

// One-line text form: "<n>: (a,b,c,d) (e,f,g,h) ...".
std::string serialize(const PdCode& code);

// Inverse of serialize().  Accepts optional '+' on labels.  Throws
// std::invalid_argument with a position hint on malformed input; the parsed
// code is additionally run through validate() and rejected if invalid.
PdCode parse_pdcode(const std::string& line);

}  // namespace knotcensus
