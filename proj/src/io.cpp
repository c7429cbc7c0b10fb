#include "catseries/io.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "catseries/format.hpp"

namespace cts {
namespace {

struct Token {
    std::string symbol;
    std::size_t line;
    std::size_t column;
};

struct RawSeries {
    std::string id;
    std::optional<std::string> label;
    std::vector<Token> tokens;
    std::size_t line;
};

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string where(std::size_t line, std::size_t column) {
    return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": ";
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto end = text.find('\n', start);
        if (end == std::string_view::npos) {
            if (start < text.size()) lines.push_back(text.substr(start));
            break;
        }
        lines.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    return lines;
}

std::vector<RawSeries> scan_symbol_csv(std::string_view text) {
    std::vector<RawSeries> out;
    const auto lines = split_lines(text);
    for (std::size_t n = 0; n < lines.size(); ++n) {
        const std::size_t line_no = n + 1;
        std::string_view line = lines[n];
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (trim(line).empty() || trim(line).front() == '#') continue;
        RawSeries raw{"s" + std::to_string(out.size() + 1), std::nullopt, {}, line_no};
        std::string_view body = line;
        if (const auto bar = line.rfind('|'); bar != std::string_view::npos) {
            const auto label = trim(line.substr(bar + 1));
            if (label.empty()) throw ValidationError(where(line_no, bar + 1) + "empty label after '|'");
            raw.label = std::string(label);
            body = line.substr(0, bar);
        }
        std::size_t start = 0;
        while (true) {
            const auto comma = body.find(',', start);
            const auto field = body.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                                   : comma - start);
            const auto symbol = trim(field);
            const std::size_t offset = symbol.empty() ? 0 : field.find_first_not_of(" \t");
            const std::size_t column = start + offset + 1;
            if (symbol.empty()) throw ValidationError(where(line_no, column) + "empty symbol");
            raw.tokens.push_back({std::string(symbol), line_no, column});
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        out.push_back(std::move(raw));
    }
    return out;
}

std::vector<RawSeries> scan_fasta(std::string_view text) {
    std::vector<RawSeries> out;
    const auto lines = split_lines(text);
    for (std::size_t n = 0; n < lines.size(); ++n) {
        const std::size_t line_no = n + 1;
        std::string_view line = lines[n];
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (!line.empty() && line.front() == '>') {
            std::string_view header = trim(line.substr(1));
            if (const auto space = header.find_first_of(" \t"); space != std::string_view::npos) {
                header = header.substr(0, space);
            }
            RawSeries raw{"", std::nullopt, {}, line_no};
            if (const auto bar = header.find('|'); bar != std::string_view::npos) {
                if (bar + 1 < header.size()) raw.label = std::string(header.substr(bar + 1));
                header = header.substr(0, bar);
            }
            if (header.empty()) throw ValidationError(where(line_no, 2) + "record without an id");
            raw.id = std::string(header);
            out.push_back(std::move(raw));
            continue;
        }
        if (trim(line).empty() || line.front() == ';') continue;
        if (out.empty()) throw ValidationError(where(line_no, 1) + "sequence data before the first '>' header");
        for (std::size_t c = 0; c < line.size(); ++c) {
            if (line[c] == ' ' || line[c] == '\t') continue;
            out.back().tokens.push_back({std::string(1, line[c]), line_no, c + 1});
        }
    }
    for (const auto& raw : out) {
        if (raw.tokens.empty()) {
            throw ValidationError("line " + std::to_string(raw.line) + ": record '" + raw.id + "' has no symbols");
        }
    }
    return out;
}

}  // namespace

std::optional<CorpusFormat> parse_corpus_format(std::string_view name) {
    if (name == "csv" || name == "symbol-csv") return CorpusFormat::symbol_csv;
    if (name == "fasta" || name == "fasta-like") return CorpusFormat::fasta;
    return std::nullopt;
}

CorpusFormat detect_corpus_format(std::string_view text) {
    for (auto line : split_lines(text)) {
        const auto t = trim(line);
        if (t.empty()) continue;
        return t.front() == '>' ? CorpusFormat::fasta : CorpusFormat::symbol_csv;
    }
    return CorpusFormat::symbol_csv;
}

bool ParsedCorpus::has_labels() const {
    return std::any_of(labels.begin(), labels.end(), [](const auto& l) { return l.has_value(); });
}

ParsedCorpus parse_corpus(std::string_view text, CorpusFormat format,
                          const std::optional<Alphabet>& alphabet) {
    auto raws = format == CorpusFormat::fasta ? scan_fasta(text) : scan_symbol_csv(text);
    if (raws.empty()) throw ValidationError("empty corpus file");

    Alphabet alpha = [&] {
        if (alphabet) return *alphabet;
        std::set<std::string> seen;
        for (const auto& raw : raws)
            for (const auto& tok : raw.tokens) seen.insert(tok.symbol);
        if (seen.size() < 2) {
            throw ValidationError("cannot infer an alphabet from fewer than two distinct symbols; declare it");
        }
        return Alphabet(std::vector<std::string>(seen.begin(), seen.end()));
    }();

    ParsedCorpus corpus{alpha, {}, {}, {}};
    for (auto& raw : raws) {
        std::vector<std::size_t> codes;
        codes.reserve(raw.tokens.size());
        for (const auto& tok : raw.tokens) {
            const auto code = alpha.index_of(tok.symbol);
            if (!code) {
                throw ValidationError(where(tok.line, tok.column) + "unknown symbol '" + tok.symbol + "'");
            }
            codes.push_back(*code);
        }
        corpus.series.emplace_back(std::move(codes), alpha);
        corpus.ids.push_back(std::move(raw.id));
        corpus.labels.push_back(std::move(raw.label));
    }
    return corpus;
}

std::string write_corpus(const std::vector<CategoricalSeries>& series,
                         const std::vector<std::string>& labels) {
    if (!labels.empty() && labels.size() != series.size()) {
        throw ValidationError("one label per series expected");
    }
    std::string out;
    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        for (std::size_t t = 0; t < s.length(); ++t) {
            if (t) out += ',';
            out += s.alphabet().symbol(s[t]);
        }
        if (!labels.empty()) out += '|' + labels[k];
        out += '\n';
    }
    return out;
}

Alphabet parse_alphabet_list(std::string_view list) {
    std::vector<std::string> symbols;
    std::size_t start = 0;
    while (true) {
        const auto comma = list.find(',', start);
        const auto symbol = trim(list.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                                     : comma - start));
        symbols.emplace_back(symbol);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    for (const auto& s : symbols) {
        if (s.find('|') != std::string::npos) throw ValidationError("alphabet symbols may not contain '|'");
    }
    return Alphabet(std::move(symbols));
}

namespace {

std::vector<std::string> split_csv_record(std::string_view line, std::size_t line_no) {
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t k = 0; k < line.size(); ++k) {
        const char c = line[k];
        if (quoted) {
            if (c == '"' && k + 1 < line.size() && line[k + 1] == '"') {
                fields.back() += '"';
                ++k;
            } else if (c == '"') {
                quoted = false;
            } else {
                fields.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back();
        } else if (c != '\r') {
            fields.back() += c;
        }
    }
    if (quoted) throw ValidationError("line " + std::to_string(line_no) + ": unterminated quote");
    return fields;
}

}  // namespace

DistanceTable parse_distance_csv(std::string_view text) {
    std::vector<std::pair<std::size_t, std::vector<std::string>>> records;
    const auto lines = split_lines(text);
    for (std::size_t n = 0; n < lines.size(); ++n) {
        if (trim(lines[n]).empty()) continue;
        records.emplace_back(n + 1, split_csv_record(lines[n], n + 1));
    }
    if (records.empty()) throw ValidationError("empty distance file");
    const auto& header = records.front().second;
    const std::size_t n = header.size() - 1;
    if (n == 0) throw ValidationError("distance header lists no objects");
    if (records.size() != n + 1) throw ValidationError("distance table must have one row per header id");
    DistanceTable table{{header.begin() + 1, header.end()}, Matrix(n, n)};
    for (std::size_t a = 0; a < n; ++a) {
        const auto& [line_no, fields] = records[a + 1];
        if (fields.size() != n + 1) {
            throw ValidationError("line " + std::to_string(line_no) + ": expected " + std::to_string(n + 1) + " fields");
        }
        if (fields[0] != table.ids[a]) {
            throw ValidationError("line " + std::to_string(line_no) + ": row id does not match the header");
        }
        for (std::size_t b = 0; b < n; ++b) {
            const std::string& f = fields[b + 1];
            char* end = nullptr;
            errno = 0;
            const double v = std::strtod(f.c_str(), &end);
            if (f.empty() || *end != '\0' || errno == ERANGE || !std::isfinite(v) || v < 0.0) {
                throw ValidationError("line " + std::to_string(line_no) + ": invalid distance '" + f + "'");
            }
            table.values(a, b) = v;
        }
    }
    for (std::size_t a = 0; a < n; ++a) {
        if (table.values(a, a) != 0.0) throw ValidationError("distance table has a non-zero diagonal");
        for (std::size_t b = 0; b < a; ++b) {
            const double x = table.values(a, b), y = table.values(b, a);
            if (std::abs(x - y) > 1e-12 * std::max({1.0, x, y})) {
                throw ValidationError("distance table is not symmetric");
            }
        }
    }
    return table;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace cts
