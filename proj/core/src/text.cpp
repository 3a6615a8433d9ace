#include "cadence/text.hpp"

#include "cadence/error.hpp"
#include "cadence/porter.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>

namespace cadence {

const std::set<std::string>& default_stopwords() {
    static const std::set<std::string> words = {
        "a", "about", "above", "after", "again", "against", "all", "am", "an", "and", "any", "are",
        "as", "at", "be", "because", "been", "before", "being", "below", "between", "both", "but",
        "by", "can", "could", "did", "do", "does", "doing", "down", "during", "each", "few", "for",
        "from", "further", "had", "has", "have", "having", "he", "her", "here", "hers", "herself",
        "him", "himself", "his", "how", "i", "if", "in", "into", "is", "it", "its", "itself",
        "just", "me", "more", "most", "my", "myself", "no", "nor", "not", "now", "of", "off", "on",
        "once", "only", "or", "other", "our", "ours", "ourselves", "out", "over", "own", "same",
        "she", "should", "so", "some", "such", "than", "that", "the", "their", "theirs", "them",
        "themselves", "then", "there", "these", "they", "this", "those", "through", "to", "too",
        "under", "until", "up", "very", "was", "we", "were", "what", "when", "where", "which",
        "while", "who", "whom", "why", "will", "with", "would", "you", "your", "yours", "yourself",
        "yourselves", "also", "us", "let", "may", "might", "must", "shall", "via", "etc",
    };
    return words;
}

Tokens preprocess(std::string_view text, const std::set<std::string>& stopwords) {
    Tokens out;
    std::string current;
    auto flush = [&] {
        if (current.size() >= 2 && !stopwords.contains(current)) {
            out.push_back(porter_stem(current));
        }
        current.clear();
    };
    for (char raw : text) {
        const auto c = static_cast<unsigned char>(raw);
        if (c < 0x80 && std::isalnum(c)) {
            current.push_back(static_cast<char>(std::tolower(c)));
        } else {
            flush();
        }
    }
    flush();
    return out;
}

Tokens preprocess(std::string_view text) { return preprocess(text, default_stopwords()); }

Vocabulary::Vocabulary(std::vector<std::string> terms, std::vector<int> document_frequency,
                       int n_documents)
    : terms_(std::move(terms)), df_(std::move(document_frequency)), n_documents_(n_documents) {
    if (terms_.size() != df_.size()) {
        throw DomainError("vocabulary terms and frequencies differ in length");
    }
    if (!std::is_sorted(terms_.begin(), terms_.end()) ||
        std::adjacent_find(terms_.begin(), terms_.end()) != terms_.end()) {
        throw DomainError("vocabulary terms must be sorted and unique");
    }
    for (int df : df_) {
        if (df < 1 || df > n_documents_) {
            throw DomainError("document frequency outside [1, n_documents]");
        }
    }
}

int Vocabulary::index_of(std::string_view term) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), term);
    if (it == terms_.end() || *it != term) return -1;
    return static_cast<int>(it - terms_.begin());
}

double Vocabulary::idf(std::size_t index) const {
    return std::log(static_cast<double>(n_documents_) / static_cast<double>(df_.at(index)));
}

Vocabulary fit_vocabulary(std::span<const Tokens> documents, int min_df) {
    if (min_df < 1) {
        throw DomainError("min_df must be >= 1");
    }
    std::map<std::string, int> df;
    bool any = false;
    for (const auto& doc : documents) {
        any = any || !doc.empty();
        const std::set<std::string> unique(doc.begin(), doc.end());
        for (const auto& t : unique) ++df[t];
    }
    if (!any) {
        throw UndefinedError("cannot fit a vocabulary: every document is empty");
    }
    std::vector<std::string> terms;
    std::vector<int> freq;
    for (const auto& [term, count] : df) {
        if (count >= min_df) {
            terms.push_back(term);
            freq.push_back(count);
        }
    }
    return Vocabulary(std::move(terms), std::move(freq), static_cast<int>(documents.size()));
}

TermVector tfidf(const Tokens& document, const Vocabulary& vocab) {
    std::map<int, int> counts;
    for (const auto& t : document) {
        const int idx = vocab.index_of(t);
        if (idx >= 0) ++counts[idx];
    }
    TermVector v;
    for (const auto& [idx, count] : counts) {
        const double w = count * vocab.idf(static_cast<std::size_t>(idx));
        if (w > 0.0) v.weights.emplace(idx, w);
    }
    return v;
}

std::vector<int> top_terms(std::span<const TermVector> vectors, std::size_t limit) {
    std::map<int, double> mass;
    for (const auto& v : vectors) {
        for (const auto& [idx, w] : v.weights) mass[idx] += w;
    }
    std::vector<std::pair<int, double>> ranked(mass.begin(), mass.end());
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    if (ranked.size() > limit) ranked.resize(limit);
    std::vector<int> out;
    out.reserve(ranked.size());
    for (const auto& [idx, w] : ranked) out.push_back(idx);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace cadence
