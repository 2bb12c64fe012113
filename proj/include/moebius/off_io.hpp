#pragma once

#include <Eigen/Dense>

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "moebius/errors.hpp"

namespace moebius {

struct OffData {
    std::vector<Eigen::Vector3d> vertices;
    std::vector<std::vector<int>> faces;
};

namespace detail {

/// Next line that carries data: strips comments (# to end of line), skips
/// blank lines.  Returns false at end of stream.
inline bool next_data_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r\n") != std::string::npos) return true;
    }
    return false;
}

}  // namespace detail

/// Reads OFF: header "OFF", counts "V F E", V vertex lines, F face lines
/// "k i1 ... ik".  Comments and blank lines are tolerated anywhere; the
/// edge count is read but not trusted.
inline OffData read_off(std::istream& in) {
    std::string line;
    if (!detail::next_data_line(in, line)) throw ParseError("OFF: empty input");
    {
        std::istringstream hdr(line);
        std::string tag;
        hdr >> tag;
        if (tag != "OFF") throw ParseError("OFF: missing OFF header, got '" + tag + "'");
        std::string extra;
        if (hdr >> extra)
            throw ParseError("OFF: unexpected token '" + extra + "' after header");
    }
    if (!detail::next_data_line(in, line)) throw ParseError("OFF: missing counts line");
    long nv = -1, nf = -1, ne = -1;
    {
        std::istringstream counts(line);
        if (!(counts >> nv >> nf >> ne) || nv < 0 || nf < 0)
            throw ParseError("OFF: malformed counts line '" + line + "'");
    }

    OffData data;
    data.vertices.reserve(nv);
    for (long i = 0; i < nv; ++i) {
        if (!detail::next_data_line(in, line))
            throw ParseError("OFF: expected " + std::to_string(nv) + " vertices, got " +
                             std::to_string(i));
        std::istringstream row(line);
        double x, y, z;
        if (!(row >> x >> y >> z))
            throw ParseError("OFF: malformed vertex line '" + line + "'");
        data.vertices.emplace_back(x, y, z);
    }
    data.faces.reserve(nf);
    for (long i = 0; i < nf; ++i) {
        if (!detail::next_data_line(in, line))
            throw ParseError("OFF: expected " + std::to_string(nf) + " faces, got " +
                             std::to_string(i));
        std::istringstream row(line);
        long k = 0;
        if (!(row >> k) || k < 3) throw ParseError("OFF: malformed face line '" + line + "'");
        std::vector<int> cycle(k);
        for (long j = 0; j < k; ++j) {
            if (!(row >> cycle[j]))
                throw ParseError("OFF: face line '" + line + "' is shorter than its count");
            if (cycle[j] < 0 || cycle[j] >= nv)
                throw ParseError("OFF: face index " + std::to_string(cycle[j]) +
                                 " out of range");
        }
        data.faces.push_back(std::move(cycle));
    }
    return data;
}

inline OffData read_off_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "' for reading");
    return read_off(in);
}

/// Writes OFF with 17 significant digits, enough to reproduce every double
/// exactly.
inline void write_off(std::ostream& out, const std::vector<Eigen::Vector3d>& vertices,
                      const std::vector<std::vector<int>>& faces) {
    std::size_t edge_count = 0;
    for (const std::vector<int>& f : faces) edge_count += f.size();
    edge_count /= 2;

    out << "OFF\n" << vertices.size() << ' ' << faces.size() << ' ' << edge_count << '\n';
    char buf[96];
    for (const Eigen::Vector3d& v : vertices) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", v.x(), v.y(), v.z());
        out << buf;
    }
    for (const std::vector<int>& f : faces) {
        out << f.size();
        for (int idx : f) out << ' ' << idx;
        out << '\n';
    }
}

inline void write_off_file(const std::string& path, const std::vector<Eigen::Vector3d>& vertices,
                           const std::vector<std::vector<int>>& faces) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open '" + path + "' for writing");
    write_off(out, vertices, faces);
}

}  // namespace moebius
