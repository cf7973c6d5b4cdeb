#pragma once

// Text formats.  Facet-list files: header line `# cube-rips facets n=<n> r=<r>`,
// then one facet per line as whitespace-separated binary vertex strings;
// `#` starts a comment.  Canonical form: vertices ascending inside a facet,
// facets sorted lexicographically.  Schedule files: one collapse step per
// line, `GAMMA=<v1,v2,...> SIGMA=<...>` in vertex binary-string notation.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cuberips/complex.hpp"

namespace cuberips {

inline std::string simplex_to_string(Vmask sigma, int n) {
    std::string out;
    for_each_bit(sigma, [&](int v) {
        if (!out.empty()) out += ' ';
        out += vertex_to_string(static_cast<std::uint32_t>(v), n);
    });
    return out;
}

inline std::string simplex_to_csv(Vmask sigma, int n) {
    std::string out;
    for_each_bit(sigma, [&](int v) {
        if (!out.empty()) out += ',';
        out += vertex_to_string(static_cast<std::uint32_t>(v), n);
    });
    return out;
}

inline Vmask simplex_from_tokens(const std::vector<std::string>& tokens, int n) {
    Vmask sigma = 0;
    for (const auto& t : tokens) {
        Vertex v = vertex_from_string(t);
        if (v.dim != n) throw std::invalid_argument("vertex width disagrees with n: " + t);
        sigma |= Vmask{1} << v.bits;
    }
    return sigma;
}

inline std::string facet_file_contents(const Complex& c) {
    std::ostringstream out;
    out << "# cube-rips facets n=" << c.n << " r=" << c.r << "\n";
    for (Vmask f : c.facets) out << simplex_to_string(f, c.n) << "\n";
    return out.str();
}

inline void write_facet_file(const Complex& c, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << facet_file_contents(c);
}

inline Complex read_facet_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::string line;
    int n = -1, r = -1;
    std::vector<Vmask> facets;
    bool header_seen = false;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        std::string body = (hash == std::string::npos) ? line : line.substr(0, hash);
        if (!header_seen && hash != std::string::npos) {
            std::string comment = line.substr(hash);
            std::istringstream hs(comment);
            std::string tok;
            while (hs >> tok) {
                if (tok.rfind("n=", 0) == 0) n = std::stoi(tok.substr(2));
                if (tok.rfind("r=", 0) == 0) r = std::stoi(tok.substr(2));
            }
            if (n > 0) header_seen = true;
        }
        std::istringstream ls(body);
        std::vector<std::string> tokens;
        std::string tok;
        while (ls >> tok) tokens.push_back(tok);
        if (tokens.empty()) continue;
        if (n < 0) n = static_cast<int>(tokens.front().size());
        facets.push_back(simplex_from_tokens(tokens, n));
    }
    if (n < 0) throw std::invalid_argument("facet file has no facets and no header: " + path);
    if (n > kMaxComplexDim) throw BudgetExceeded("facet file dimension exceeds complex support (n <= 6)");
    return make_complex(1 << n, std::move(facets), Origin::explicit_, n, r);
}

struct CollapseStep {
    Vmask gamma = 0;
    Vmask sigma = 0;
};

inline std::string schedule_line(const CollapseStep& s, int n) {
    return "GAMMA=" + simplex_to_csv(s.gamma, n) + " SIGMA=" + simplex_to_csv(s.sigma, n);
}

inline void write_schedule_file(const std::vector<CollapseStep>& steps, int n, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    for (const auto& s : steps) out << schedule_line(s, n) << "\n";
}

inline std::vector<CollapseStep> read_schedule_file(const std::string& path, int n) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::vector<CollapseStep> steps;
    std::string line;
    auto parse_list = [&](const std::string& s) {
        std::vector<std::string> tokens;
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ',')) if (!item.empty()) tokens.push_back(item);
        return simplex_from_tokens(tokens, n);
    };
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto g = line.find("GAMMA=");
        auto sp = line.find(' ');
        auto s = line.find("SIGMA=");
        if (g == std::string::npos || s == std::string::npos || sp == std::string::npos)
            throw std::invalid_argument("bad schedule line: " + line);
        CollapseStep step;
        step.gamma = parse_list(line.substr(g + 6, sp - (g + 6)));
        step.sigma = parse_list(line.substr(s + 6));
        steps.push_back(step);
    }
    return steps;
}

}  // namespace cuberips
