#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "catseries/core.hpp"

namespace cts {

/// symbol_csv: one series per line, comma-separated symbols, optional
/// trailing "|label". Blank lines and lines starting with '#' are skipped.
/// fasta: ">id" (optionally ">id|label") header lines, each followed by
/// single-character symbols, possibly wrapped over several lines.
enum class CorpusFormat { symbol_csv, fasta };

[[nodiscard]] std::optional<CorpusFormat> parse_corpus_format(std::string_view name);

/// fasta when the first non-blank line starts with '>', symbol_csv otherwise.
[[nodiscard]] CorpusFormat detect_corpus_format(std::string_view text);

struct ParsedCorpus {
    Alphabet alphabet;
    std::vector<CategoricalSeries> series;
    std::vector<std::string> ids;  ///< fasta ids, or s1, s2, ... for symbol_csv
    std::vector<std::optional<std::string>> labels;

    [[nodiscard]] bool has_labels() const;
};

/// Parses a corpus against a declared alphabet, or against the sorted unique
/// symbols of the file when `alphabet` is empty. Errors report the 1-based
/// line and column of the offending symbol.
[[nodiscard]] ParsedCorpus parse_corpus(std::string_view text, CorpusFormat format,
                                        const std::optional<Alphabet>& alphabet);

/// Symbol-csv text for a corpus; labels (if any) are appended as "|label".
[[nodiscard]] std::string write_corpus(const std::vector<CategoricalSeries>& series,
                                       const std::vector<std::string>& labels = {});

/// "a,c,g,t" -> Alphabet{a, c, g, t}
[[nodiscard]] Alphabet parse_alphabet_list(std::string_view list);

/// A square distance table as written by the dist command: header
/// "id,<id_1>,...,<id_n>", then one row per object.
struct DistanceTable {
    std::vector<std::string> ids;
    Matrix values;
};

[[nodiscard]] DistanceTable parse_distance_csv(std::string_view text);

[[nodiscard]] std::string read_text_file(const std::string& path);

}  // namespace cts
