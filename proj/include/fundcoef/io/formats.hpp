#pragma once

#include <cctype>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fundcoef/errors.hpp"
#include "fundcoef/jacobi/form_data.hpp"
#include "fundcoef/jacobi/qexpansion.hpp"

namespace fundcoef::io {

/// One line split into key=value fields. Whitespace inside a value (e.g. within brackets) is dropped.
struct Fields {
    std::vector<std::pair<std::string, std::string>> items;
    std::size_t line = 0;

    bool has(const std::string& key) const {
        for (const auto& [k, v] : items)
            if (k == key) return true;
        return false;
    }
    const std::string& get(const std::string& key) const {
        for (const auto& [k, v] : items)
            if (k == key) return v;
        throw parse_error("missing field '" + key + "'", line);
    }
};

namespace detail {

inline bool starts_field(const std::string& tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos || eq == 0) return false;
    for (std::size_t i = 0; i < eq; ++i) {
        unsigned char ch = static_cast<unsigned char>(tok[i]);
        if (!(std::islower(ch) || std::isdigit(ch) || ch == '_')) return false;
    }
    return std::islower(static_cast<unsigned char>(tok[0])) != 0;
}

inline Fields split_fields(const std::string& text, std::size_t line) {
    Fields f;
    f.line = line;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        if (starts_field(tok)) {
            auto eq = tok.find('=');
            f.items.emplace_back(tok.substr(0, eq), tok.substr(eq + 1));
        } else {
            if (f.items.empty()) throw parse_error("expected key=value, got '" + tok + "'", line);
            f.items.back().second += tok;
        }
    }
    return f;
}

// Data lines with '#' comments and blank lines removed.
inline std::vector<Fields> read_lines(std::istream& in) {
    std::vector<Fields> out;
    std::string text;
    std::size_t line = 0;
    while (std::getline(in, text)) {
        ++line;
        auto hash = text.find('#');
        if (hash != std::string::npos) text.erase(hash);
        Fields f = split_fields(text, line);
        if (!f.items.empty()) out.push_back(std::move(f));
    }
    return out;
}

inline long long parse_int(const std::string& s, std::size_t line) {
    try {
        std::size_t pos = 0;
        long long v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw parse_error("malformed integer '" + s + "'", line);
    }
}

inline Rational parse_coeff(const std::string& s, std::size_t line) {
    try {
        return parse_rational(s);
    } catch (const std::exception& e) {
        throw parse_error("malformed rational '" + s + "'", line);
    }
}

inline IntVector parse_vector(const std::string& s, std::size_t line) {
    if (s.size() < 2 || s.front() != '[' || s.back() != ']') throw parse_error("malformed vector '" + s + "'", line);
    IntVector out;
    std::string body = s.substr(1, s.size() - 2);
    if (body.empty()) return out;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_int(item, line));
    return out;
}

inline IntMatrix parse_matrix(const std::string& s, std::size_t line) {
    if (s.size() < 4 || s.substr(0, 2) != "[[" || s.substr(s.size() - 2) != "]]")
        throw parse_error("malformed matrix '" + s + "'", line);
    std::vector<IntVector> rows;
    std::size_t pos = 1;
    while (pos < s.size() - 1) {
        if (s[pos] == ',') {
            ++pos;
            continue;
        }
        auto close = s.find(']', pos);
        if (s[pos] != '[' || close == std::string::npos) throw parse_error("malformed matrix '" + s + "'", line);
        rows.push_back(parse_vector(s.substr(pos, close - pos + 1), line));
        pos = close + 1;
    }
    for (const auto& r : rows)
        if (r.size() != rows.size()) throw parse_error("matrix '" + s + "' is not square", line);
    return IntMatrix::from_rows(rows);
}

inline HalfIntegralMatrix parse_gram(const std::string& s, std::size_t line) {
    try {
        return HalfIntegralMatrix::from_gram(parse_matrix(s, line));
    } catch (const parse_error&) {
        throw;
    } catch (const std::exception& e) {
        throw parse_error(std::string("invalid gram matrix: ") + e.what(), line);
    }
}

// Runs fn, attaching the line number to domain errors raised while ingesting a record.
template <class F>
void at_line(std::size_t line, F&& fn) {
    try {
        fn();
    } catch (const parse_error&) {
        throw;
    } catch (const inconsistent_data_error& e) {
        throw inconsistent_data_error(std::string(e.what()) + " (line " + std::to_string(line) + ")");
    } catch (const precondition_error& e) {
        throw parse_error(e.what(), line);
    }
}

inline void reject_unknown(const Fields& f, std::initializer_list<const char*> allowed) {
    for (const auto& [k, v] : f.items) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || k == a;
        if (!ok) throw parse_error("unexpected field '" + k + "'", f.line);
    }
}

inline std::istream& open(std::ifstream& in, const std::string& path) {
    in.open(path);
    if (!in) throw parse_error("cannot open '" + path + "'", 0);
    return in;
}

}  // namespace detail

// Siegel coefficient files: header genus=, level=, char=, maxtrace= (and optional weight=); records gram= coeff=.

inline SiegelFormData read_siegel(std::istream& in) {
    std::map<std::string, std::string> header;
    std::optional<SiegelFormData> data;
    for (const auto& f : detail::read_lines(in)) {
        if (f.has("gram")) {
            detail::reject_unknown(f, {"gram", "coeff"});
            if (!data) {
                for (const char* key : {"genus", "level", "char", "maxtrace"})
                    if (!header.count(key)) throw parse_error(std::string("missing header '") + key + "'", f.line);
                std::optional<long long> weight;
                if (header.count("weight")) weight = detail::parse_int(header["weight"], f.line);
                detail::at_line(f.line, [&] {
                    data.emplace(static_cast<std::size_t>(detail::parse_int(header["genus"], f.line)),
                                 detail::parse_int(header["level"], f.line), header["char"],
                                 detail::parse_int(header["maxtrace"], f.line), weight);
                });
            }
            HalfIntegralMatrix t = detail::parse_gram(f.get("gram"), f.line);
            Rational c = detail::parse_coeff(f.get("coeff"), f.line);
            detail::at_line(f.line, [&] { data->add(t, c); });
        } else {
            detail::reject_unknown(f, {"genus", "level", "char", "maxtrace", "weight"});
            if (data) throw parse_error("header line after records", f.line);
            for (const auto& [k, v] : f.items) header[k] = v;
        }
    }
    if (!data) {
        for (const char* key : {"genus", "level", "char", "maxtrace"})
            if (!header.count(key)) throw parse_error(std::string("missing header '") + key + "'", 0);
        std::optional<long long> weight;
        if (header.count("weight")) weight = detail::parse_int(header["weight"], 0);
        detail::at_line(0, [&] {
            data.emplace(static_cast<std::size_t>(detail::parse_int(header["genus"], 0)), detail::parse_int(header["level"], 0),
                         header["char"], detail::parse_int(header["maxtrace"], 0), weight);
        });
    }
    return std::move(*data);
}

inline void write_siegel(std::ostream& out, const SiegelFormData& f) {
    out << "genus=" << f.genus() << "\n";
    out << "level=" << f.level() << "\n";
    out << "char=" << f.character_spec() << "\n";
    out << "maxtrace=" << f.maxtrace() << "\n";
    if (f.weight()) out << "weight=" << *f.weight() << "\n";
    for (const auto& t : f.order()) out << "gram=" << t.gram().to_string() << " coeff=" << to_fraction_string(f.coefficient(t)) << "\n";
}

// Jacobi coefficient files: header k=, index_gram=, level=, char=, maxn=; records n= r= coeff=.

inline JacobiFormData read_jacobi(std::istream& in) {
    std::map<std::string, std::string> header;
    std::optional<JacobiFormData> data;
    auto make = [&](std::size_t line) {
        for (const char* key : {"k", "index_gram", "level", "char", "maxn"})
            if (!header.count(key)) throw parse_error(std::string("missing header '") + key + "'", line);
        HalfIntegralMatrix t = detail::parse_gram(header["index_gram"], line);
        detail::at_line(line, [&] {
            data.emplace(detail::parse_int(header["k"], line), t, detail::parse_int(header["level"], line), header["char"],
                         detail::parse_int(header["maxn"], line));
        });
    };
    for (const auto& f : detail::read_lines(in)) {
        if (f.has("n") || f.has("r") || f.has("coeff")) {
            detail::reject_unknown(f, {"n", "r", "coeff"});
            if (!data) make(f.line);
            long long n = detail::parse_int(f.get("n"), f.line);
            IntVector r = detail::parse_vector(f.get("r"), f.line);
            Rational c = detail::parse_coeff(f.get("coeff"), f.line);
            detail::at_line(f.line, [&] { data->add(n, r, c); });
        } else {
            detail::reject_unknown(f, {"k", "index_gram", "level", "char", "maxn"});
            if (data) throw parse_error("header line after records", f.line);
            for (const auto& [k, v] : f.items) header[k] = v;
        }
    }
    if (!data) make(0);
    return std::move(*data);
}

inline void write_jacobi(std::ostream& out, const JacobiFormData& phi) {
    out << "k=" << phi.weight() << "\n";
    out << "index_gram=" << phi.index().gram().to_string() << "\n";
    out << "level=" << phi.level() << "\n";
    out << "char=" << phi.character_spec() << "\n";
    out << "maxn=" << phi.maxn() << "\n";
    for (const auto& rec : phi.records())
        out << "n=" << rec.n << " r=" << vector_to_string(rec.r) << " coeff=" << to_fraction_string(rec.coeff) << "\n";
}

// Q-expansion files: header offset= weight2= level= bound= char=; records exp= coeff=. exp is the index l,
// the actual exponent being l + offset.

inline QSeries read_qexpansion(std::istream& in) {
    std::optional<QSeries> data;
    for (const auto& f : detail::read_lines(in)) {
        if (f.has("exp")) {
            detail::reject_unknown(f, {"exp", "coeff"});
            if (!data) throw parse_error("record before header", f.line);
            long long e = detail::parse_int(f.get("exp"), f.line);
            Rational c = detail::parse_coeff(f.get("coeff"), f.line);
            if (data->coeffs().count(e)) throw parse_error("duplicate exponent " + std::to_string(e), f.line);
            detail::at_line(f.line, [&] { data->set(e, c); });
        } else {
            detail::reject_unknown(f, {"offset", "weight2", "level", "bound", "char"});
            if (data) throw parse_error("second header line", f.line);
            QMeta meta{detail::parse_int(f.get("weight2"), f.line), detail::parse_int(f.get("level"), f.line),
                       CharacterLabel::parse(f.get("char"))};
            long long bound = detail::parse_int(f.get("bound"), f.line);
            Rational offset = detail::parse_coeff(f.get("offset"), f.line);
            detail::at_line(f.line, [&] { data.emplace(bound, offset, meta); });
        }
    }
    if (!data) throw parse_error("missing Q-expansion header", 0);
    return std::move(*data);
}

inline void write_qexpansion(std::ostream& out, const QSeries& f) {
    out << "offset=" << to_fraction_string(f.offset()) << " weight2=" << f.meta().weight2 << " level=" << f.meta().level
        << " bound=" << f.bound() << " char=" << f.meta().character.to_string() << "\n";
    for (const auto& [e, c] : f.coeffs()) out << "exp=" << e << " coeff=" << to_fraction_string(c) << "\n";
}

template <class T, class Reader>
T read_file(const std::string& path, Reader reader) {
    std::ifstream in;
    detail::open(in, path);
    return reader(in);
}

inline SiegelFormData read_siegel_file(const std::string& path) { return read_file<SiegelFormData>(path, [](std::istream& s) { return read_siegel(s); }); }
inline JacobiFormData read_jacobi_file(const std::string& path) { return read_file<JacobiFormData>(path, [](std::istream& s) { return read_jacobi(s); }); }
inline QSeries read_qexpansion_file(const std::string& path) { return read_file<QSeries>(path, [](std::istream& s) { return read_qexpansion(s); }); }

template <class T, class Writer>
void write_file(const std::string& path, const T& value, Writer writer) {
    std::ofstream out(path);
    if (!out) throw parse_error("cannot write '" + path + "'", 0);
    writer(out, value);
}

}  // namespace fundcoef::io
