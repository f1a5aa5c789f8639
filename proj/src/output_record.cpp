#include "zetadiv/output_record.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "zetadiv/errors.hpp"

namespace zetadiv {

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.15g", x);
    return buf;
}

namespace {

bool needs_quotes(const std::string& v) {
    if (v.empty()) return true;
    for (const char c : v)
        if (c == ' ' || c == '"' || c == '\\' || c == '=') return true;
    return false;
}

std::string quote(const std::string& v) {
    if (!needs_quotes(v)) return v;
    std::string out = "\"";
    for (const char c : v) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

// Splits a machine line into key=value tokens, honouring quoted values.
std::vector<std::pair<std::string, std::string>> tokenize(const std::string& line) {
    std::vector<std::pair<std::string, std::string>> out;
    std::size_t i = 0;
    const std::size_t n = line.size();
    while (i < n) {
        while (i < n && line[i] == ' ') ++i;
        if (i >= n) break;
        const std::size_t eq = line.find('=', i);
        if (eq == std::string::npos)
            throw ParseError("machine record: token without '=' near offset " + std::to_string(i),
                             0);
        std::string key = line.substr(i, eq - i);
        std::string value;
        i = eq + 1;
        if (i < n && line[i] == '"') {
            ++i;
            while (i < n && line[i] != '"') {
                if (line[i] == '\\' && i + 1 < n) ++i;
                value += line[i++];
            }
            if (i >= n) throw ParseError("machine record: unterminated quote", 0);
            ++i;
        } else {
            while (i < n && line[i] != ' ') value += line[i++];
        }
        out.emplace_back(std::move(key), std::move(value));
    }
    return out;
}

double parse_number(const std::string& v) {
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0')
        throw ParseError("machine record: bad numeric field '" + v + "'", 0);
    return x;
}

}  // namespace

std::string OutputRecord::to_text() const {
    std::ostringstream os;
    os << command << "\n";
    for (const auto& [k, v] : inputs) os << "  " << k << " = " << v << "\n";
    for (const auto& [k, v] : values) os << "  " << k << " = " << format_double(v) << "\n";
    for (const auto& [k, v] : notes) os << "  " << k << " = " << v << "\n";
    if (certificate) os << "  certificate = " << format_double(*certificate) << "\n";
    if (!method.empty()) os << "  method = " << method << "\n";
    if (terms_used) os << "  terms_used = " << *terms_used << "\n";
    return os.str();
}

std::string OutputRecord::to_machine() const {
    std::ostringstream os;
    os << "command=" << quote(command);
    for (const auto& [k, v] : inputs) os << " in:" << k << "=" << quote(v);
    for (const auto& [k, v] : values) os << " val:" << k << "=" << format_double(v);
    for (const auto& [k, v] : notes) os << " note:" << k << "=" << quote(v);
    if (certificate) os << " certificate=" << format_double(*certificate);
    if (!method.empty()) os << " method=" << quote(method);
    if (terms_used) os << " terms_used=" << *terms_used;
    return os.str();
}

OutputRecord OutputRecord::parse_machine(const std::string& line) {
    OutputRecord rec;
    for (const auto& [key, value] : tokenize(line)) {
        if (key == "command") {
            rec.command = value;
        } else if (key.rfind("in:", 0) == 0) {
            rec.inputs.emplace_back(key.substr(3), value);
        } else if (key.rfind("val:", 0) == 0) {
            rec.values.emplace_back(key.substr(4), parse_number(value));
        } else if (key.rfind("note:", 0) == 0) {
            rec.notes.emplace_back(key.substr(5), value);
        } else if (key == "certificate") {
            rec.certificate = parse_number(value);
        } else if (key == "method") {
            rec.method = value;
        } else if (key == "terms_used") {
            rec.terms_used = static_cast<std::size_t>(std::strtoull(value.c_str(), nullptr, 10));
        } else {
            throw ParseError("machine record: unknown key '" + key + "'", 0);
        }
    }
    if (rec.command.empty()) throw ParseError("machine record: missing command field", 0);
    return rec;
}

}  // namespace zetadiv
