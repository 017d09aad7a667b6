#include "carl/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace carl {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string matrix_to_csv(const Matrix& m) {
    std::string out;
    for (std::size_t i = 0; i < m.rows; ++i) {
        for (std::size_t j = 0; j < m.cols; ++j) {
            if (j) out += ',';
            out += format_double(m(i, j));
        }
        out += '\n';
    }
    return out;
}

Matrix matrix_from_csv(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw parse_error("matrix CSV: malformed number \"" + cell + "\"");
            }
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw parse_error("matrix CSV: ragged rows");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw parse_error("matrix CSV: empty input");
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) m(i, j) = rows[i][j];
    return m;
}

std::string matrix_to_json(const Matrix& m) {
    nlohmann::json j;
    j["rows"] = m.rows;
    j["cols"] = m.cols;
    j["data"] = m.data;
    return j.dump();
}

Matrix matrix_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(std::string("matrix JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data"))
        throw parse_error("matrix JSON: expected {rows, cols, data}");
    Matrix m(j["rows"].get<std::size_t>(), j["cols"].get<std::size_t>());
    auto data = j["data"].get<std::vector<double>>();
    if (data.size() != m.rows * m.cols) throw parse_error("matrix JSON: data length mismatch");
    m.data = std::move(data);
    return m;
}

std::string trajectory_to_csv(const Trajectory& t) {
    std::string out = "t";
    for (std::size_t j = 0; j < t.states.cols; ++j) out += ",x" + std::to_string(j + 1);
    for (std::size_t j = 0; j < t.algebraics.cols; ++j) out += ",z" + std::to_string(j + 1);
    out += '\n';
    for (std::size_t k = 0; k < t.times.size(); ++k) {
        out += format_double(t.times[k]);
        for (std::size_t j = 0; j < t.states.cols; ++j)
            out += ',' + format_double(t.states(k, j));
        for (std::size_t j = 0; j < t.algebraics.cols; ++j)
            out += ',' + format_double(t.algebraics(k, j));
        out += '\n';
    }
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw numeric_error("cannot open \"" + path + "\" for writing");
    f << content;
    if (!f) throw numeric_error("failed writing \"" + path + "\"");
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw parse_error("cannot open \"" + path + "\"");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace carl
