#include "cadence/porter.hpp"

#include <cstring>

namespace cadence {

namespace {

class Stemmer {
public:
    explicit Stemmer(std::string_view w) : b_(w) { k_ = static_cast<int>(b_.size()) - 1; }

    std::string run() {
        if (k_ <= 1) return b_;
        step1ab();
        if (k_ > 0) {
            step1c();
            step2();
            step3();
            step4();
            step5();
        }
        return b_.substr(0, static_cast<std::size_t>(k_ + 1));
    }

private:
    char at(int i) const { return b_[static_cast<std::size_t>(i)]; }

    bool cons(int i) const {
        switch (at(i)) {
        case 'a': case 'e': case 'i': case 'o': case 'u': return false;
        case 'y': return i == 0 ? true : !cons(i - 1);
        default: return true;
        }
    }

    // Number of VC sequences in b[0..j].
    int m() const {
        int n = 0;
        int i = 0;
        while (true) {
            if (i > j_) return n;
            if (!cons(i)) break;
            ++i;
        }
        ++i;
        while (true) {
            while (true) {
                if (i > j_) return n;
                if (cons(i)) break;
                ++i;
            }
            ++i;
            ++n;
            while (true) {
                if (i > j_) return n;
                if (!cons(i)) break;
                ++i;
            }
            ++i;
        }
    }

    bool vowel_in_stem() const {
        for (int i = 0; i <= j_; ++i) {
            if (!cons(i)) return true;
        }
        return false;
    }

    bool doublec(int j) const { return j >= 1 && at(j) == at(j - 1) && cons(j); }

    bool cvc(int i) const {
        if (i < 2 || !cons(i) || cons(i - 1) || !cons(i - 2)) return false;
        const char ch = at(i);
        return ch != 'w' && ch != 'x' && ch != 'y';
    }

    bool ends(const char* s) {
        const int len = static_cast<int>(std::strlen(s));
        if (len > k_ + 1) return false;
        if (b_.compare(static_cast<std::size_t>(k_ - len + 1), static_cast<std::size_t>(len), s) != 0) {
            return false;
        }
        j_ = k_ - len;
        return true;
    }

    void setto(const char* s) {
        b_.resize(static_cast<std::size_t>(j_ + 1));
        b_ += s;
        k_ = static_cast<int>(b_.size()) - 1;
    }

    void r(const char* s) {
        if (m() > 0) setto(s);
    }

    void truncate() { b_.resize(static_cast<std::size_t>(k_ + 1)); }

    void step1ab() {
        if (at(k_) == 's') {
            if (ends("sses")) k_ -= 2;
            else if (ends("ies")) setto("i");
            else if (at(k_ - 1) != 's') --k_;
            truncate();
        }
        if (ends("eed")) {
            if (m() > 0) --k_;
            truncate();
        } else if ((ends("ed") || ends("ing")) && vowel_in_stem()) {
            k_ = j_;
            truncate();
            if (ends("at")) setto("ate");
            else if (ends("bl")) setto("ble");
            else if (ends("iz")) setto("ize");
            else if (doublec(k_)) {
                --k_;
                const char ch = at(k_);
                if (ch == 'l' || ch == 's' || ch == 'z') ++k_;
                truncate();
            } else if (m() == 1 && cvc(k_)) {
                j_ = k_;
                setto("e");
            }
        }
    }

    void step1c() {
        if (ends("y") && vowel_in_stem()) b_[static_cast<std::size_t>(k_)] = 'i';
    }

    void apply(std::initializer_list<std::pair<const char*, const char*>> rules) {
        for (const auto& [suffix, repl] : rules) {
            if (ends(suffix)) {
                r(repl);
                return;
            }
        }
    }

    void step2() {
        if (k_ < 1) return;
        switch (at(k_ - 1)) {
        case 'a': apply({{"ational", "ate"}, {"tional", "tion"}}); break;
        case 'c': apply({{"enci", "ence"}, {"anci", "ance"}}); break;
        case 'e': apply({{"izer", "ize"}}); break;
        case 'l':
            apply({{"bli", "ble"}, {"alli", "al"}, {"entli", "ent"}, {"eli", "e"}, {"ousli", "ous"}});
            break;
        case 'o': apply({{"ization", "ize"}, {"ation", "ate"}, {"ator", "ate"}}); break;
        case 's':
            apply({{"alism", "al"}, {"iveness", "ive"}, {"fulness", "ful"}, {"ousness", "ous"}});
            break;
        case 't': apply({{"aliti", "al"}, {"iviti", "ive"}, {"biliti", "ble"}}); break;
        case 'g': apply({{"logi", "log"}}); break;
        default: break;
        }
    }

    void step3() {
        switch (at(k_)) {
        case 'e': apply({{"icate", "ic"}, {"ative", ""}, {"alize", "al"}}); break;
        case 'i': apply({{"iciti", "ic"}}); break;
        case 'l': apply({{"ical", "ic"}, {"ful", ""}}); break;
        case 's': apply({{"ness", ""}}); break;
        default: break;
        }
    }

    bool any_end(std::initializer_list<const char*> suffixes) {
        for (const char* s : suffixes) {
            if (ends(s)) return true;
        }
        return false;
    }

    void step4() {
        if (k_ < 1) return;
        bool hit = false;
        switch (at(k_ - 1)) {
        case 'a': hit = any_end({"al"}); break;
        case 'c': hit = any_end({"ance", "ence"}); break;
        case 'e': hit = any_end({"er"}); break;
        case 'i': hit = any_end({"ic"}); break;
        case 'l': hit = any_end({"able", "ible"}); break;
        case 'n': hit = any_end({"ant", "ement", "ment", "ent"}); break;
        case 'o':
            if (ends("ion") && j_ >= 0 && (at(j_) == 's' || at(j_) == 't')) hit = true;
            else hit = ends("ou");
            break;
        case 's': hit = any_end({"ism"}); break;
        case 't': hit = any_end({"ate", "iti"}); break;
        case 'u': hit = any_end({"ous"}); break;
        case 'v': hit = any_end({"ive"}); break;
        case 'z': hit = any_end({"ize"}); break;
        default: break;
        }
        if (hit && m() > 1) {
            k_ = j_;
            truncate();
        }
    }

    void step5() {
        j_ = k_;
        if (at(k_) == 'e') {
            const int a = m();
            if (a > 1 || (a == 1 && !cvc(k_ - 1))) {
                --k_;
                truncate();
            }
        }
        if (at(k_) == 'l' && doublec(k_) && m() > 1) {
            --k_;
            truncate();
        }
    }

    std::string b_;
    int k_ = 0;
    int j_ = 0;
};

} // namespace

std::string porter_stem(std::string_view word) {
    if (word.size() <= 2) return std::string(word);
    return Stemmer(word).run();
}

} // namespace cadence
