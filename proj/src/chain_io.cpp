#include "mcres/chain_io.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mcres/error.hpp"

namespace mcres {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

double parse_decimal(std::string_view field, std::size_t line) {
    field = trim(field);
    if (!field.empty() && field.front() == '+') field.remove_prefix(1);
    double value = 0.0;
    const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || ec != std::errc{} || end != field.data() + field.size()) {
        throw Error(ErrorKind::ParseError,
                    "line " + std::to_string(line) + ": '" + std::string(field) + "' is not a number");
    }
    return value;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

ChainFile parse_chain_csv(std::string_view text) {
    std::vector<std::vector<double>> rows;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        ++line_no;
        line = trim(line);
        if (line.empty()) continue;

        std::vector<double> row;
        while (true) {
            const auto comma = line.find(',');
            row.push_back(parse_decimal(line.substr(0, comma), line_no));
            if (comma == std::string_view::npos) break;
            line.remove_prefix(comma + 1);
        }
        rows.push_back(std::move(row));
    }

    if (rows.empty()) throw Error(ErrorKind::ParseError, "no rows");
    const std::size_t n = rows.size();
    std::vector<double> entries;
    entries.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n) {
            throw Error(ErrorKind::ParseError, "row " + std::to_string(i + 1) + " has " +
                                                   std::to_string(rows[i].size()) + " entries, expected " +
                                                   std::to_string(n));
        }
        entries.insert(entries.end(), rows[i].begin(), rows[i].end());
    }
    return {DenseMatrix(n, n, std::move(entries)), {}};
}

ChainFile parse_chain_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorKind::ParseError, e.what());
    }
    if (!doc.is_object() || !doc.contains("P") || !doc["P"].is_array() || doc["P"].empty()) {
        throw Error(ErrorKind::ParseError, "expected an object with a non-empty array \"P\"");
    }

    const auto& rows = doc["P"];
    const std::size_t n = rows.size();
    std::vector<double> entries;
    entries.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!rows[i].is_array() || rows[i].size() != n) {
            throw Error(ErrorKind::ParseError, "P row " + std::to_string(i + 1) + " is not an array of " +
                                                   std::to_string(n) + " numbers");
        }
        for (const auto& v : rows[i]) {
            if (!v.is_number()) throw Error(ErrorKind::ParseError, "non-numeric entry in P row " + std::to_string(i + 1));
            entries.push_back(v.get<double>());
        }
    }

    ChainFile file{DenseMatrix(n, n, std::move(entries)), {}};
    if (doc.contains("states")) {
        const auto& states = doc["states"];
        if (!states.is_array() || states.size() != n) {
            throw Error(ErrorKind::ParseError, "\"states\" must list " + std::to_string(n) + " labels");
        }
        for (const auto& s : states) {
            if (!s.is_string()) throw Error(ErrorKind::ParseError, "state labels must be strings");
            file.labels.push_back(s.get<std::string>());
        }
    }
    return file;
}

std::optional<ChainFormat> format_from_extension(const std::filesystem::path& path) {
    const auto ext = path.extension().string();
    if (ext == ".json") return ChainFormat::json;
    if (ext == ".csv") return ChainFormat::csv;
    return std::nullopt;
}

ChainFormat detect_chain_format(const std::filesystem::path& path, std::string_view text) {
    if (const auto f = format_from_extension(path)) return *f;
    const auto body = trim(text);
    return !body.empty() && body.front() == '{' ? ChainFormat::json : ChainFormat::csv;
}

ChainFile read_chain_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    return detect_chain_format(path, text) == ChainFormat::json ? parse_chain_json(text) : parse_chain_csv(text);
}

StochasticMatrix load_chain(const std::filesystem::path& path, const Tolerances& tol) {
    ChainFile file = read_chain_file(path);
    return validate(file.p, std::move(file.labels), tol);
}

std::string format_chain_csv(const StochasticMatrix& p) {
    std::string out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t j = 0; j < p.size(); ++j) {
            if (j > 0) out += ',';
            out += format_double(p(i, j));
        }
        out += '\n';
    }
    return out;
}

std::string format_chain_json(const StochasticMatrix& p) {
    nlohmann::json doc;
    if (!p.labels().empty()) doc["states"] = p.labels();
    auto rows = nlohmann::json::array();
    for (std::size_t i = 0; i < p.size(); ++i) {
        const auto r = p.matrix().row(i);
        rows.push_back(std::vector<double>(r.begin(), r.end()));
    }
    doc["P"] = std::move(rows);
    return doc.dump(2) + "\n";
}

}  // namespace mcres
