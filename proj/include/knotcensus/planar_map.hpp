// Embedded multigraphs as rotation systems.
//
// This is the working representation for the reduce/expand shadow generator,
// for planar_code import/export, and for quadrangulation duals.  Each vertex
// keeps a list of ordered connection slots (counterclockwise); a slot is
// either empty or holds one edge end.  Shadows are exactly the 4-regular
// instances whose slot lists have length four: opposite slots of such a
// vertex form the two strand passes, so conversion to and from pd-codes is
// lossless.  Other roles (quadrangulations, seed graphs) use whatever
// degrees they need.
//
// Deletions empty slots in place, preserving the cyclic order of the
// survivors.  Insertions write a new packed cyclic order, which is harmless
// because only the cyclic order of occupied slots carries meaning once an
// edge is gone.

#pragma once

#include <string>
#include <vector>

#include "knotcensus/pdcode.hpp"

namespace knotcensus {

// Edge ends: ends 2e and 2e+1 belong to the 0-based edge e.
using End = int;

struct EndPos {
    int vertex = -1;
    int slot = -1;

    bool operator==(const EndPos& o) const = default;
};

class PartialGraph {
  public:
    static constexpr End kEmpty = -1;

    PartialGraph() = default;
    explicit PartialGraph(int vertices);

    static PartialGraph from_shadow(const PdCode& code);
    // Requires every vertex to carry exactly four occupied slots.  Labels
    // edges along strands and validates the result.
    PdCode to_shadow() const;

    int vertex_count() const { return static_cast<int>(slots_.size()); }
    // Live edges only.
    int edge_count() const;
    int degree(int v) const;
    const std::vector<End>& slots(int v) const {
        return slots_[static_cast<size_t>(v)];
    }
    EndPos end_pos(End e) const { return pos_[static_cast<size_t>(e)]; }
    static int edge_of(End e) { return e >> 1; }
    static End twin(End e) { return e ^ 1; }
    int end_vertex(End e) const { return pos_[static_cast<size_t>(e)].vertex; }
    bool edge_alive(int edge) const {
        return static_cast<size_t>(edge) < live_.size() &&
               live_[static_cast<size_t>(edge)];
    }
    std::vector<int> live_edges() const;

    int add_vertex();
    // Creates a new live edge with unplaced ends and returns its index.
    int add_edge();
    void delete_edge(int edge);

    // Occupied ends of v in cyclic (slot) order.
    std::vector<End> rotation(int v) const;
    // Insert end e immediately after anchor in the cyclic order at anchor's
    // vertex.
    void place_after(End e, End anchor);
    // Insert end e immediately before anchor.
    void place_before(End e, End anchor);
    // Append end e to the occupied order of v (for vertices of degree < 2
    // where every corner is the same, and for fresh vertices).
    void place_append(End e, int v);

    int multiplicity(int u, int v) const;
    std::vector<int> edges_between(int u, int v) const;
    std::vector<int> loops_at(int v) const;
    bool simple() const;

    int component_count() const;
    bool connected() const { return component_count() == 1; }
    // Connectivity when the listed edges are treated as deleted.
    bool connected_ignoring(const std::vector<int>& skip_edges) const;
    bool is_bridge(int edge) const;

    // Face walks over occupied slots: from end a, cross to twin(a) and leave
    // by the next occupied slot counterclockwise.  Every live end appears in
    // exactly one face, once.
    std::vector<std::vector<End>> faces() const;
    // Face id per end, numbered in faces() order.
    std::vector<int> face_of_end() const;
    // The end that departs through the corner immediately after end a at its
    // vertex; its face_of_end entry is the face bordering that corner.
    End corner_successor(End a) const;

    // 2C - 2g = V - E + F summed over components; 0 exactly when every
    // component embeds in the sphere with the given rotations.
    int genus() const;

    // Isomorphism-invariant encoding (reflections included): the minimum
    // breadth-first relabeling over every root end and both orientations.
    // Equal encodings mean embedded-isomorphic graphs.
    std::string canonical_encoding() const;

    bool operator==(const PartialGraph& o) const = default;

  private:
    void repack(int v, const std::vector<End>& order);

    std::vector<std::vector<End>> slots_;
    std::vector<EndPos> pos_;
    std::vector<char> live_;
};

// Planar duality: one dual vertex per face, one dual edge per live edge, dual
// rotations in face-walk order.  dual_map(dual_map(g)) is embedded-isomorphic
// to g for connected g.
PartialGraph dual_map(const PartialGraph& g);

// plantri-style binary stream of simple embedded graphs: ASCII header
// ">>planar_code<<", then per graph one vertex-count byte and, per vertex,
// its neighbor list (1-based vertex bytes in rotation order) terminated by a
// zero byte.  Only simple graphs with at most 255 vertices are
// representable.
std::vector<PartialGraph> parse_planar_code(const std::string& bytes);
std::string write_planar_code(const std::vector<PartialGraph>& graphs);

}  // namespace knotcensus
