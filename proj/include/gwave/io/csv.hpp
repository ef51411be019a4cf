#pragma once

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "gwave/dynamics/observations.hpp"
#include "gwave/dynamics/trajectory.hpp"
#include "gwave/error.hpp"

namespace gwave::io {

/// Shortest text that reads back to the same double (17 significant digits).
inline std::string format_double(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// A table of named columns sharing one time axis.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

inline void write_csv(std::ostream& os, CsvTable const& table)
{
    for (std::size_t c = 0; c < table.header.size(); ++c)
        os << (c ? "," : "") << table.header[c];
    os << '\n';
    for (auto const& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c)
            os << (c ? "," : "") << format_double(row[c]);
        os << '\n';
    }
}

inline void write_csv_file(std::string const& path, CsvTable const& table)
{
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw Error("cannot open '" + path + "' for writing");
    write_csv(os, table);
    if (!os)
        throw Error("write to '" + path + "' failed");
}

inline CsvTable read_csv(std::istream& is)
{
    CsvTable t;
    std::string line;
    if (!std::getline(is, line))
        throw InvalidArgument("csv: empty input");
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ','))
            t.header.push_back(cell);
    }
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty() || line == "\r")
            continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                std::size_t used = 0;
                row.push_back(std::stod(cell, &used));
            } catch (std::exception const&) {
                throw InvalidArgument("csv: bad number '" + cell + "' on line " + std::to_string(lineno));
            }
        }
        if (row.size() != t.header.size())
            throw InvalidArgument("csv: line " + std::to_string(lineno) + " has " + std::to_string(row.size()) +
                                  " fields, expected " + std::to_string(t.header.size()));
        t.rows.push_back(std::move(row));
    }
    return t;
}

inline CsvTable read_csv_file(std::string const& path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw Error("cannot open '" + path + "' for reading");
    return read_csv(is);
}

/// Columns t, x_1..x_N and, when recorded, v_1..v_N.
inline CsvTable trajectory_table(StateTrajectory const& traj, bool with_velocities = true)
{
    CsvTable t;
    std::size_t const n = traj.vertex_count();
    bool const vel = with_velocities && traj.has_velocities();
    t.header.push_back("t");
    for (std::size_t k = 1; k <= n; ++k)
        t.header.push_back("x_" + std::to_string(k));
    if (vel)
        for (std::size_t k = 1; k <= n; ++k)
            t.header.push_back("v_" + std::to_string(k));
    for (std::size_t i = 0; i < traj.samples(); ++i) {
        std::vector<double> r;
        r.reserve(t.header.size());
        r.push_back(traj.t(i));
        for (std::size_t k = 0; k < n; ++k)
            r.push_back(traj.values(k, i));
        if (vel)
            for (std::size_t k = 0; k < n; ++k)
                r.push_back(traj.velocities(k, i));
        t.rows.push_back(std::move(r));
    }
    return t;
}

/// Columns t, d_<v> for each observed vertex v.
inline CsvTable observations_table(Observations const& obs)
{
    CsvTable t;
    t.header.push_back("t");
    for (Vertex v : obs.vertices)
        t.header.push_back("d_" + std::to_string(v));
    for (std::size_t i = 0; i < obs.samples(); ++i) {
        std::vector<double> r;
        r.push_back(static_cast<double>(i) * obs.dt);
        for (std::size_t k = 0; k < obs.vertices.size(); ++k)
            r.push_back(obs.values(k, i));
        t.rows.push_back(std::move(r));
    }
    return t;
}

/// Inverse of observations_table. Requires a uniform time column.
inline Observations observations_from_table(CsvTable const& t)
{
    if (t.header.empty() || t.header[0] != "t")
        throw InvalidArgument("observations csv: first column must be 't'");
    if (t.rows.size() < 2)
        throw InvalidArgument("observations csv: need at least two rows");
    Observations obs;
    for (std::size_t c = 1; c < t.header.size(); ++c) {
        auto const& h = t.header[c];
        if (h.rfind("d_", 0) != 0)
            throw InvalidArgument("observations csv: column '" + h + "' is not of the form d_<vertex>");
        obs.vertices.push_back(std::stoi(h.substr(2)));
    }
    if (!std::is_sorted(obs.vertices.begin(), obs.vertices.end()))
        throw InvalidArgument("observations csv: vertex columns must be sorted");
    obs.dt = t.rows[1][0] - t.rows[0][0];
    obs.values = DenseMatrix(obs.vertices.size(), t.rows.size());
    for (std::size_t i = 0; i < t.rows.size(); ++i)
        for (std::size_t k = 0; k < obs.vertices.size(); ++k)
            obs.values(k, i) = t.rows[i][k + 1];
    return obs;
}

}  // namespace gwave::io
