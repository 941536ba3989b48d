#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "bsa/bfunction.hpp"
#include "bsa/corpus.hpp"

namespace bsa {

using json = nlohmann::json; // objects keep sorted keys, so dumps are canonical

/// FNV-1a over the raw input bytes; enough to pin a report to its input.
inline std::string input_hash(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << "fnv1a64:" << std::hex << h;
    return os.str();
}

struct ParsedInput {
    Arrangement arr;
    std::size_t pivot = 0; // 0: default (last form)
    std::string hash;
};

namespace detail {

inline std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') { ++line; col = 1; }
        else ++col;
    }
    return {line, col};
}

} // namespace detail

/// Parse an arrangement file: n, forms as rational strings, optional name
/// and pivot. Coefficients must be strings; floats never enter.
inline ParsedInput parse_arrangement_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        auto [line, col] = detail::line_column(text, e.byte > 0 ? e.byte - 1 : 0);
        fail(errc::input_error, "line " + std::to_string(line) + ", column " +
                                    std::to_string(col) + ": " + e.what());
    }
    if (!j.is_object()) fail(errc::input_error, "top level must be an object");
    if (!j.contains("n") || !j["n"].is_number_unsigned())
        fail(errc::input_error, "field 'n' must be a positive integer");
    if (!j.contains("forms") || !j["forms"].is_array() || j["forms"].empty())
        fail(errc::input_error, "field 'forms' must be a nonempty array");
    std::size_t n = j["n"].get<std::size_t>();
    std::vector<std::vector<Rat>> rows;
    for (std::size_t i = 0; i < j["forms"].size(); ++i) {
        const auto& row = j["forms"][i];
        if (!row.is_array())
            fail(errc::input_error, "forms[" + std::to_string(i) + "] must be an array");
        std::vector<Rat> r;
        for (std::size_t c = 0; c < row.size(); ++c) {
            const auto& cell = row[c];
            if (!cell.is_string())
                fail(errc::input_error, "forms[" + std::to_string(i) + "][" + std::to_string(c) +
                                            "] must be a rational string such as \"-1\" or \"2/3\"");
            r.push_back(parse_rat(cell.get<std::string>()));
        }
        rows.push_back(std::move(r));
    }
    std::string name = j.value("name", std::string());
    ParsedInput in;
    in.arr = parse_arrangement(n, rows, name);
    if (j.contains("pivot")) {
        if (!j["pivot"].is_number_unsigned() || j["pivot"].get<std::size_t>() < 1 ||
            j["pivot"].get<std::size_t>() > rows.size())
            fail(errc::input_error, "field 'pivot' must index a form (1-based)");
        in.pivot = j["pivot"].get<std::size_t>();
    }
    in.hash = input_hash(text);
    return in;
}

inline ParsedInput read_arrangement_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) fail(errc::input_error, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_arrangement_text(ss.str());
}

inline json to_json(const Evidence& ev, const Rat* root = nullptr) {
    json inputs = json::object();
    for (const auto& [k, v] : ev.inputs) inputs[k] = v;
    json out{{"criterion", ev.criterion}, {"cite", ev.cite}, {"inputs", inputs}};
    if (ev.verdict != Status::unknown) out["verdict"] = status_name(ev.verdict);
    if (root) out["root"] = to_string(*root);
    return out;
}

inline json to_json(const RootCertificate& c) {
    json ev = json::array();
    for (const auto& e : c.evidence) ev.push_back(to_json(e));
    return json{{"root", to_string(c.root)},
                {"status", status_name(c.status)},
                {"mult_lower", c.mult_lower},
                {"mult_upper", c.mult_upper},
                {"evidence", ev}};
}

inline json to_json(const std::vector<Factor>& fs) {
    json a = json::array();
    for (const auto& f : fs) a.push_back(json{{"root", to_string(f.root)}, {"multiplicity", f.mult}});
    return a;
}

/// Rendered factorization of b_f(-s) as a product over (s + root).
inline std::string render_product(const std::vector<Factor>& fs) {
    std::string s;
    for (const auto& f : fs) {
        if (!s.empty()) s += " ";
        s += "(s+" + to_string(f.root) + ")";
        if (f.mult > 1) s += "^" + std::to_string(f.mult);
    }
    return s;
}

inline json flat_to_json(const Flat& f) {
    json c = json::array();
    for (auto i : f.containing()) c.push_back(i);
    return json{{"containing", c},
                {"codim", f.codim},
                {"m", f.m()},
                {"mobius", to_string(f.mobius)},
                {"dense", f.dense}};
}

} // namespace bsa
