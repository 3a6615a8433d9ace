#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cadence {

using Tokens = std::vector<std::string>;

inline constexpr const char* kStopwordsVersion = "en-2017.1";

// Shipped English stop-word list.
[[nodiscard]] const std::set<std::string>& default_stopwords();

// Lowercase, split on anything but ASCII letters and digits, drop stop words
// and tokens shorter than two characters, Porter-stem the rest.
[[nodiscard]] Tokens preprocess(std::string_view text, const std::set<std::string>& stopwords);
[[nodiscard]] Tokens preprocess(std::string_view text);

class Vocabulary {
public:
    Vocabulary() = default;
    // Terms must be sorted and unique, df >= 1 and <= n_documents.
    Vocabulary(std::vector<std::string> terms, std::vector<int> document_frequency,
               int n_documents);

    [[nodiscard]] const std::vector<std::string>& terms() const noexcept { return terms_; }
    [[nodiscard]] const std::vector<int>& document_frequency() const noexcept { return df_; }
    [[nodiscard]] int n_documents() const noexcept { return n_documents_; }
    [[nodiscard]] std::size_t size() const noexcept { return terms_.size(); }
    // -1 when absent.
    [[nodiscard]] int index_of(std::string_view term) const;
    // ln(N / df)
    [[nodiscard]] double idf(std::size_t index) const;

private:
    std::vector<std::string> terms_;
    std::vector<int> df_;
    int n_documents_ = 0;
};

[[nodiscard]] Vocabulary fit_vocabulary(std::span<const Tokens> documents, int min_df = 2);

// Sparse tf-idf weights keyed by vocabulary index; zero weights are omitted.
struct TermVector {
    std::map<int, double> weights;

    [[nodiscard]] double weight(int index) const {
        auto it = weights.find(index);
        return it == weights.end() ? 0.0 : it->second;
    }
    bool operator==(const TermVector&) const = default;
};

// Raw term count times ln(N / df); out-of-vocabulary tokens are ignored.
[[nodiscard]] TermVector tfidf(const Tokens& document, const Vocabulary& vocab);

// Indices of the `limit` terms carrying the most tf-idf mass across `vectors`,
// ascending by index. Terms present in every document carry none and are
// never selected.
[[nodiscard]] std::vector<int> top_terms(std::span<const TermVector> vectors, std::size_t limit);

} // namespace cadence
