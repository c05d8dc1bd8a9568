#include <knotcensus/classify.hpp>

#include <algorithm>
#include <istream>
#include <sstream>
#include <stdexcept>

#include <knotcensus/errors.hpp>

namespace knotcensus {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_fields(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(trim(cur));
    return out;
}

int crossings_from_name(const std::string& name) {
    size_t us = name.find('_');
    if (us == std::string::npos || us == 0 || us + 1 == name.size())
        throw ReferenceValidationFailure("reference name '" + name + "' is not of the form k_i");
    int k = 0;
    try {
        size_t used = 0;
        k = std::stoi(name, &used);
        if (used != us) k = 0;
    } catch (const std::exception&) {
        k = 0;
    }
    if (k <= 0)
        throw ReferenceValidationFailure("reference name '" + name + "' is not of the form k_i");
    return k;
}

// A prime factor available for composite types: a base reference or the
// mirror of a chiral one.
struct Factor {
    std::string name;
    std::string mirror_name;  // == name when the polynomial is mirror-invariant
    HomflyPoly poly;
    int crossings = 0;
};

void insert_type(KnotTable& table, const HomflyPoly& p, const KnotType& t) {
    table.by_poly[poly_to_string(p)].insert(t);
}

void emit_composites(KnotTable& table, const std::vector<Factor>& factors, size_t start,
                     int budget, std::vector<size_t>& chosen) {
    if (chosen.size() >= 2) {
        std::string name;
        HomflyPoly p = homfly_one();
        std::vector<std::string> mirrored;
        for (size_t i : chosen) {
            if (!name.empty()) name += '#';
            name += factors[i].name;
            p = p * factors[i].poly;
            mirrored.push_back(factors[i].mirror_name);
        }
        std::sort(mirrored.begin(), mirrored.end());
        std::vector<std::string> own;
        for (size_t i : chosen) own.push_back(factors[i].name);
        SymmetryClass sym =
            (mirrored == own) ? SymmetryClass::Full : SymmetryClass::Reversible;
        insert_type(table, p, KnotType{name, sym});
    }
    for (size_t i = start; i < factors.size(); ++i) {
        if (factors[i].crossings > budget) continue;
        chosen.push_back(i);
        emit_composites(table, factors, i, budget - factors[i].crossings, chosen);
        chosen.pop_back();
    }
}

}  // namespace

std::string symmetry_name(SymmetryClass s) {
    switch (s) {
        case SymmetryClass::None: return "none";
        case SymmetryClass::Mirror: return "mirror";
        case SymmetryClass::Reversible: return "reversible";
        case SymmetryClass::Amphichiral: return "amphichiral";
        case SymmetryClass::Full: return "full";
    }
    throw std::invalid_argument("symmetry_name: bad enum value");
}

SymmetryClass parse_symmetry(const std::string& name) {
    if (name == "none") return SymmetryClass::None;
    if (name == "mirror") return SymmetryClass::Mirror;
    if (name == "reversible") return SymmetryClass::Reversible;
    if (name == "amphichiral") return SymmetryClass::Amphichiral;
    if (name == "full") return SymmetryClass::Full;
    throw std::invalid_argument("parse_symmetry: unknown class '" + name + "'");
}

std::vector<ReferenceKnot> load_reference_knots(std::istream& in) {
    std::vector<ReferenceKnot> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string body = trim(line);
        if (body.empty() || body[0] == '#') continue;
        std::vector<std::string> f = split_fields(body, '|');
        if (f.size() != 5)
            throw std::invalid_argument("reference knots line " + std::to_string(lineno) +
                                        ": expected 5 '|' fields, got " + std::to_string(f.size()));
        ReferenceKnot ref;
        ref.name = f[0];
        if (ref.name.empty())
            throw std::invalid_argument("reference knots line " + std::to_string(lineno) +
                                        ": empty name");
        ref.symmetry = parse_symmetry(f[1]);
        ref.diagram.shadow = parse_pdcode(f[2]);
        const int n = ref.diagram.shadow.crossings();
        if (static_cast<int>(f[3].size()) != n)
            throw std::invalid_argument("reference knots line " + std::to_string(lineno) +
                                        ": over02 field length != crossing count");
        for (char c : f[3]) {
            if (c != '0' && c != '1')
                throw std::invalid_argument("reference knots line " + std::to_string(lineno) +
                                            ": over02 field must be 0/1 bits");
            ref.diagram.over02.push_back(static_cast<char>(c - '0'));
        }
        size_t comps = components(ref.diagram.shadow).size();
        if (f[4].size() != comps)
            throw std::invalid_argument("reference knots line " + std::to_string(lineno) +
                                        ": reversed field length != component count");
        for (char c : f[4]) {
            if (c != '0' && c != '1')
                throw std::invalid_argument("reference knots line " + std::to_string(lineno) +
                                            ": reversed field must be 0/1 bits");
            ref.diagram.reversed.push_back(static_cast<char>(c - '0'));
        }
        out.push_back(std::move(ref));
    }
    return out;
}

KnotTable build_knot_table(const std::vector<ReferenceKnot>& refs, int max_total_crossings) {
    KnotTable table;
    table.max_crossings = max_total_crossings;
    insert_type(table, homfly_one(), KnotType{"0_1", SymmetryClass::Full});

    std::set<std::string> names;
    std::set<std::string> polys;
    std::vector<Factor> factors;
    for (const ReferenceKnot& ref : refs) {
        if (!names.insert(ref.name).second)
            throw ReferenceValidationFailure("duplicate reference name '" + ref.name + "'");
        int k = crossings_from_name(ref.name);
        if (ref.diagram.shadow.crossings() != k)
            throw ReferenceValidationFailure("reference '" + ref.name + "' has " +
                                             std::to_string(ref.diagram.shadow.crossings()) +
                                             " crossings, name promises " + std::to_string(k));
        if (k > max_total_crossings)
            throw ReferenceValidationFailure("reference '" + ref.name +
                                             "' exceeds the table crossing budget");
        if (components(ref.diagram.shadow).size() != 1)
            throw ReferenceValidationFailure("reference '" + ref.name + "' is not a knot diagram");
        HomflyPoly p;
        try {
            p = homfly(ref.diagram);
        } catch (const std::exception& e) {
            throw ReferenceValidationFailure("reference '" + ref.name + "' is malformed: " +
                                             e.what());
        }
        if (reduce_monogons(ref.diagram).shadow.crossings() != k)
            throw ReferenceValidationFailure("reference '" + ref.name +
                                             "' has a removable kink, so it cannot realize the "
                                             "crossing number in its name");
        if (p == homfly_one())
            throw ReferenceValidationFailure("reference '" + ref.name +
                                             "' has the trivial polynomial");
        HomflyPoly pm = mirror_poly(p);
        bool poly_mirror_invariant = (pm == p);
        bool class_contains_mirror = ref.symmetry == SymmetryClass::Mirror ||
                                     ref.symmetry == SymmetryClass::Amphichiral ||
                                     ref.symmetry == SymmetryClass::Full;
        if (poly_mirror_invariant != class_contains_mirror)
            throw ReferenceValidationFailure(
                "reference '" + ref.name +
                "': polynomial mirror symmetry contradicts the declared class " +
                symmetry_name(ref.symmetry));
        if (!polys.insert(poly_to_string(p)).second ||
            (!poly_mirror_invariant && !polys.insert(poly_to_string(pm)).second))
            throw ReferenceValidationFailure("reference '" + ref.name +
                                             "' repeats another reference's polynomial");
        insert_type(table, p, KnotType{ref.name, ref.symmetry});
        factors.push_back(Factor{ref.name, poly_mirror_invariant ? ref.name : ref.name + "^m", p, k});
        if (!poly_mirror_invariant) {
            insert_type(table, pm, KnotType{ref.name + "^m", ref.symmetry});
            factors.push_back(Factor{ref.name + "^m", ref.name, pm, k});
        }
    }
    std::sort(factors.begin(), factors.end(),
              [](const Factor& a, const Factor& b) { return a.name < b.name; });
    std::vector<size_t> chosen;
    emit_composites(table, factors, 0, max_total_crossings, chosen);
    return table;
}

std::set<KnotType> classify(const HomflyPoly& p, const KnotTable& table) {
    auto it = table.by_poly.find(poly_to_string(p));
    if (it == table.by_poly.end()) return {};
    return it->second;
}

std::map<std::string, long long> split_symmetry_counts(const KnotType& base, long long count) {
    auto share = [&](long long ways) {
        if (count % ways != 0)
            throw IndivisibleCount("count " + std::to_string(count) + " for " + base.name +
                                   " does not split " + std::to_string(ways) + " ways");
        return count / ways;
    };
    std::map<std::string, long long> out;
    switch (base.symmetry) {
        case SymmetryClass::Full:
            out[base.name] = count;
            break;
        case SymmetryClass::Reversible: {
            long long s = share(2);
            out[base.name] = s;
            out[base.name + "^m"] = s;
            break;
        }
        case SymmetryClass::Mirror:
        case SymmetryClass::Amphichiral: {
            // For an amphichiral, non-reversible type the mirror equals the
            // reverse, so the orbit is still the pair {K, K^r}.
            long long s = share(2);
            out[base.name] = s;
            out[base.name + "^r"] = s;
            break;
        }
        case SymmetryClass::None: {
            long long s = share(4);
            out[base.name] = s;
            out[base.name + "^m"] = s;
            out[base.name + "^r"] = s;
            out[base.name + "^mr"] = s;
            break;
        }
    }
    return out;
}

}  // namespace knotcensus
