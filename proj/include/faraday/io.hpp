#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace faraday::io {

// Doubles are serialized with 17 significant digits so every emitted file
// reloads to bit-identical values.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Write-to-temp then rename; readers never observe a half-written file.
inline void write_text_atomic(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
        out << content;
        if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
    }
    std::filesystem::rename(tmp, path);
}

class CsvBuilder {
public:
    explicit CsvBuilder(const std::vector<std::string>& columns) {
        for (std::size_t k = 0; k < columns.size(); ++k) {
            if (k) header_ += ',';
            header_ += columns[k];
        }
        header_ += '\n';
    }

    // comment lines always precede the header
    void comment(const std::string& text) { comments_ += "# " + text + "\n"; }

    void row(const std::vector<double>& values) {
        for (std::size_t k = 0; k < values.size(); ++k) {
            if (k) body_ += ',';
            body_ += format_double(values[k]);
        }
        body_ += '\n';
    }

    void row_mixed(const std::vector<std::string>& fields) {
        for (std::size_t k = 0; k < fields.size(); ++k) {
            if (k) body_ += ',';
            body_ += fields[k];
        }
        body_ += '\n';
    }

    std::string text() const { return comments_ + header_ + body_; }

private:
    std::string comments_;
    std::string header_;
    std::string body_;
};

// Numeric CSV reader for round-trip checks and downstream scripting; string
// cells come back as NaN-free doubles only when the column is numeric, so
// callers pick the columns they need by header name.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t column(const std::string& name) const {
        for (std::size_t k = 0; k < header.size(); ++k)
            if (header[k] == name) return k;
        throw std::out_of_range("csv column '" + name + "' not found");
    }

    std::vector<double> numeric_column(const std::string& name) const {
        const std::size_t c = column(name);
        std::vector<double> out;
        out.reserve(rows.size());
        for (const auto& r : rows) out.push_back(std::stod(r.at(c)));
        return out;
    }
};

inline CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
    CsvTable table;
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> fields;
        std::string field;
        std::stringstream ss(line);
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (!have_header) {
            table.header = fields;
            have_header = true;
        } else {
            table.rows.push_back(fields);
        }
    }
    return table;
}

// Minimal JSON emitter: flat objects with numeric/string/bool members and
// numeric arrays cover every report this tool writes.
class JsonBuilder {
public:
    JsonBuilder& number(const std::string& key, double v) { return raw(key, format_double(v)); }
    JsonBuilder& integer(const std::string& key, long long v) { return raw(key, std::to_string(v)); }
    JsonBuilder& boolean(const std::string& key, bool v) { return raw(key, v ? "true" : "false"); }
    JsonBuilder& string(const std::string& key, const std::string& v) {
        return raw(key, "\"" + escape(v) + "\"");
    }
    JsonBuilder& numbers(const std::string& key, const std::vector<double>& vs) {
        std::string arr = "[";
        for (std::size_t k = 0; k < vs.size(); ++k) {
            if (k) arr += ',';
            arr += format_double(vs[k]);
        }
        arr += ']';
        return raw(key, arr);
    }

    std::string text() const { return "{\n" + body_ + "\n}\n"; }

private:
    JsonBuilder& raw(const std::string& key, const std::string& value) {
        if (!body_.empty()) body_ += ",\n";
        body_ += "  \"" + escape(key) + "\": " + value;
        return *this;
    }

    static std::string escape(const std::string& s) {
        std::string out;
        for (const char c : s) {
            if (c == '"' || c == '\\') out += '\\';
            out += c;
        }
        return out;
    }

    std::string body_;
};

} // namespace faraday::io
