#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "bsa/arrangement.hpp"

namespace bsa {

/// Bundled arrangement files: the classical d = 6, 7, 9 line arrangements,
/// generic arrangements for the small (n, d) pairs, representatives of the
/// two nu_3 = 5 and three nu_3 = 4 one/two-parameter families at d = 7
/// (with concrete parameters whose incidence counts are verified by the
/// test suite), and a decomposable example.
struct CorpusEntry {
    std::string name;
    std::string description;
    std::size_t n;
    std::vector<std::vector<std::string>> forms;
};

inline const std::vector<CorpusEntry>& corpus_manifest() {
    static const std::vector<CorpusEntry> entries = {
        {"saito-4-12-i", "cone over (x^2-1)(y^2-1)(x+y), d = 6, four triple points", 3,
         {{"1", "0", "-1"}, {"1", "0", "1"}, {"0", "1", "-1"}, {"0", "1", "1"}, {"1", "1", "0"}, {"0", "0", "1"}}},
        {"saito-4-12-ii", "cone over (x^2-1)(y^2-1)(x^2-y^2), d = 7, six triple points", 3,
         {{"1", "0", "-1"}, {"1", "0", "1"}, {"0", "1", "-1"}, {"0", "1", "1"}, {"1", "-1", "0"}, {"1", "1", "0"}, {"0", "0", "1"}}},
        {"saito-4-12-iii", "cone over xy(y+2)(x-y)(x-y+1)(x+y-1)(x+y+2)(x-2y-1), d = 9", 3,
         {{"1", "0", "0"}, {"0", "1", "0"}, {"0", "1", "2"}, {"1", "-1", "0"}, {"1", "-1", "1"},
          {"1", "1", "-1"}, {"1", "1", "2"}, {"1", "-2", "-1"}, {"0", "0", "1"}}},
        {"generic-2-3", "three distinct points on the projective line", 2,
         {{"1", "0"}, {"0", "1"}, {"1", "1"}}},
        {"generic-2-4", "four distinct points on the projective line", 2,
         {{"1", "0"}, {"0", "1"}, {"1", "1"}, {"1", "-1"}}},
        {"generic-2-5", "five distinct points on the projective line", 2,
         {{"1", "0"}, {"0", "1"}, {"1", "1"}, {"1", "-1"}, {"1", "2"}}},
        {"generic-3-4", "four planes in general position", 3,
         {{"1", "0", "0"}, {"0", "1", "0"}, {"0", "0", "1"}, {"1", "1", "1"}}},
        {"generic-3-5", "five planes in general position", 3,
         {{"1", "0", "0"}, {"0", "1", "0"}, {"0", "0", "1"}, {"1", "1", "1"}, {"1", "2", "4"}}},
        {"generic-3-6", "six planes in general position", 3,
         {{"1", "0", "0"}, {"0", "1", "0"}, {"0", "0", "1"}, {"1", "1", "1"}, {"1", "2", "4"}, {"1", "3", "9"}}},
        {"d7-nu4-family-1", "cone over xy(x-1)(y-1)(2x-y)(3x-y+1), d = 7, nu_3 = 4", 3,
         {{"1", "0", "0"}, {"0", "1", "0"}, {"1", "0", "-1"}, {"0", "1", "-1"}, {"2", "-1", "0"},
          {"3", "-1", "1"}, {"0", "0", "1"}}},
        {"d7-nu4-family-2", "cone over xy(x-1)(y-1)(2x-y+1)(x-3y-1), d = 7, nu_3 = 4", 3,
         {{"1", "0", "0"}, {"0", "1", "0"}, {"1", "0", "-1"}, {"0", "1", "-1"}, {"2", "-1", "1"},
          {"1", "-3", "-1"}, {"0", "0", "1"}}},
        {"d7-nu4-family-3", "cone over xy(x-1)(y-1)(x+y-1)(2x-y+3), d = 7, nu_3 = 4", 3,
         {{"1", "0", "0"}, {"0", "1", "0"}, {"1", "0", "-1"}, {"0", "1", "-1"}, {"1", "1", "-1"},
          {"2", "-1", "3"}, {"0", "0", "1"}}},
        {"d7-nu5-family-1", "cone over xy(x-1)(y-1)(x+y-1)(y-2x), d = 7, nu_3 = 5", 3,
         {{"1", "0", "0"}, {"0", "1", "0"}, {"1", "0", "-1"}, {"0", "1", "-1"}, {"1", "1", "-1"},
          {"-2", "1", "0"}, {"0", "0", "1"}}},
        {"d7-nu5-family-2", "cone over xy(x-1)(y-1)(3x-y)(2x-y+1), d = 7, nu_3 = 5", 3,
         {{"1", "0", "0"}, {"0", "1", "0"}, {"1", "0", "-1"}, {"0", "1", "-1"}, {"3", "-1", "0"},
          {"2", "-1", "1"}, {"0", "0", "1"}}},
        {"decomposable-xy", "f = xy, the product of two coordinate lines", 2,
         {{"1", "0"}, {"0", "1"}}},
    };
    return entries;
}

inline const CorpusEntry* corpus_find(const std::string& name) {
    for (const auto& e : corpus_manifest())
        if (e.name == name) return &e;
    return nullptr;
}

inline Arrangement corpus_arrangement(const std::string& name) {
    const CorpusEntry* e = corpus_find(name);
    if (!e) fail(errc::input_error, "no bundled arrangement named '" + name + "'");
    std::vector<std::vector<Rat>> rows;
    for (const auto& r : e->forms) {
        std::vector<Rat> row;
        for (const auto& s : r) row.push_back(parse_rat(s));
        rows.push_back(std::move(row));
    }
    return parse_arrangement(e->n, rows, e->name);
}

/// Canonical JSON text of a bundled arrangement file.
inline std::string corpus_json(const std::string& name) {
    const CorpusEntry* e = corpus_find(name);
    if (!e) fail(errc::input_error, "no bundled arrangement named '" + name + "'");
    nlohmann::json j;
    j["name"] = e->name;
    j["description"] = e->description;
    j["n"] = e->n;
    j["forms"] = e->forms;
    return j.dump(2) + "\n";
}

} // namespace bsa
