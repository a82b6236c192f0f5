#pragma once

#include <array>
#include <cctype>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace csl {

// Tokenizer rules, applied at each position in priority order:
//   1. URLs (http://, https://, www.) run to the next whitespace
//   2. emoticons from a fixed table, requiring a non-word boundary after
//   3. HTML tags <...> closed before the next whitespace
//   4. phone numbers: optional '+', then >= 7 digits with '-' separators
//   5. #hashtag and @mention
//   6. words: [a-z0-9_']+ plus any non-ASCII bytes; outer apostrophes stripped
// Everything else separates tokens and is dropped. Input is lowercased first.
// The table below is versioned with the test corpus; extend both together.
inline const std::vector<std::string>& emoticon_table() {
    static const std::vector<std::string> table = {
        ":-)", ":)",  "=)",  ":-(", ":(",  "=(",  ";-)", ";)",  ":-d", ":d",
        ":-p", ":p",  ":'(", ":-o", ":o",  ":-/", ":/",  ":-\\", ":|", "<3",
        "^_^", "-_-", "._.", ":3",  "t_t", "o_o", "=d",  ":*",   ";p",
    };
    return table;
}

namespace detail {

inline bool is_word_char(unsigned char c) {
    return std::isalnum(c) || c == '_' || c == '\'' || c >= 0x80;
}

inline bool is_boundary(std::string_view s, std::size_t pos) {
    if (pos >= s.size()) return true;
    const unsigned char c = static_cast<unsigned char>(s[pos]);
    return !(std::isalnum(c) || c >= 0x80);
}

inline bool starts_with(std::string_view s, std::size_t pos, std::string_view prefix) {
    return s.size() - pos >= prefix.size() && s.substr(pos, prefix.size()) == prefix;
}

inline std::size_t match_url(std::string_view s, std::size_t pos) {
    if (!starts_with(s, pos, "http://") && !starts_with(s, pos, "https://") &&
        !starts_with(s, pos, "www.")) {
        return 0;
    }
    std::size_t end = pos;
    while (end < s.size() && !std::isspace(static_cast<unsigned char>(s[end]))) ++end;
    return end - pos;
}

inline std::size_t match_emoticon(std::string_view s, std::size_t pos) {
    std::size_t best = 0;
    for (const auto& emo : emoticon_table()) {
        if (emo.size() > best && starts_with(s, pos, emo) && is_boundary(s, pos + emo.size())) {
            best = emo.size();
        }
    }
    return best;
}

inline std::size_t match_html_tag(std::string_view s, std::size_t pos) {
    if (s[pos] != '<') return 0;
    std::size_t i = pos + 1;
    if (i < s.size() && s[i] == '/') ++i;
    if (i >= s.size() || !std::isalpha(static_cast<unsigned char>(s[i]))) return 0;
    for (; i < s.size(); ++i) {
        const unsigned char c = static_cast<unsigned char>(s[i]);
        if (c == '>') return i - pos + 1;
        if (std::isspace(c) || c == '<') return 0;
    }
    return 0;
}

inline std::size_t match_phone(std::string_view s, std::size_t pos) {
    std::size_t end = pos;
    if (end < s.size() && s[end] == '+') ++end;
    std::size_t digits = 0;
    while (end < s.size() &&
           (std::isdigit(static_cast<unsigned char>(s[end])) || s[end] == '-')) {
        digits += std::isdigit(static_cast<unsigned char>(s[end])) ? 1 : 0;
        ++end;
    }
    if (digits < 7 || !is_boundary(s, end)) return 0;
    return end - pos;
}

inline std::size_t match_tagged_word(std::string_view s, std::size_t pos) {
    // hashtags and mentions; the marker alone is not a token
    if (s[pos] != '#' && s[pos] != '@') return 0;
    std::size_t end = pos + 1;
    while (end < s.size() && (std::isalnum(static_cast<unsigned char>(s[end])) ||
                              s[end] == '_')) {
        ++end;
    }
    return end - pos > 1 ? end - pos : 0;
}

}  // namespace detail

inline std::vector<std::string> tokenize(std::string_view text) {
    std::string lower(text);
    for (char& c : lower) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }

    std::vector<std::string> tokens;
    const std::string_view s(lower);
    std::size_t pos = 0;
    while (pos < s.size()) {
        const unsigned char c = static_cast<unsigned char>(s[pos]);
        if (std::isspace(c)) {
            ++pos;
            continue;
        }
        std::size_t len;
        if ((len = detail::match_url(s, pos)) > 0 ||
            (len = detail::match_emoticon(s, pos)) > 0 ||
            (len = detail::match_html_tag(s, pos)) > 0 ||
            (len = detail::match_phone(s, pos)) > 0 ||
            (len = detail::match_tagged_word(s, pos)) > 0) {
            tokens.emplace_back(s.substr(pos, len));
            pos += len;
            continue;
        }
        if (detail::is_word_char(c)) {
            std::size_t end = pos;
            while (end < s.size() && detail::is_word_char(static_cast<unsigned char>(s[end]))) {
                ++end;
            }
            std::size_t b = pos, e = end;
            while (b < e && s[b] == '\'') ++b;
            while (e > b && s[e - 1] == '\'') --e;
            if (e > b) tokens.emplace_back(s.substr(b, e - b));
            pos = end;
            continue;
        }
        ++pos;  // bare punctuation separates tokens and is dropped
    }
    return tokens;
}

inline std::vector<std::string> remove_stopwords(const std::vector<std::string>& tokens,
                                                 const std::unordered_set<std::string>& stoplist) {
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) {
        if (!stoplist.count(t)) out.push_back(t);
    }
    return out;
}

// Bundled English stop-word list (SMART-style function words). Overridable
// by passing a file-loaded set to remove_stopwords instead.
inline const std::unordered_set<std::string>& default_stopwords() {
    static const std::unordered_set<std::string> words = {
        "a", "about", "above", "across", "after", "afterwards", "again", "against", "all",
        "almost", "alone", "along", "already", "also", "although", "always", "am", "among",
        "amongst", "an", "and", "another", "any", "anybody", "anyhow", "anyone", "anything",
        "anyway", "anywhere", "are", "aren't", "around", "as", "at", "be", "became", "because",
        "become", "becomes", "becoming", "been", "before", "beforehand", "behind", "being",
        "below", "beside", "besides", "between", "beyond", "both", "but", "by", "can", "cannot",
        "can't", "could", "couldn't", "did", "didn't", "do", "does", "doesn't", "doing", "done",
        "don't", "down", "during", "each", "either", "else", "elsewhere", "enough", "etc", "even",
        "ever", "every", "everybody", "everyone", "everything", "everywhere", "except", "few",
        "for", "former", "formerly", "from", "further", "had", "hadn't", "has", "hasn't", "have",
        "haven't", "having", "he", "hence", "her", "here", "hereafter", "hereby", "herein",
        "hereupon", "hers", "herself", "him", "himself", "his", "how", "however", "i", "ie", "if",
        "in", "indeed", "into", "is", "isn't", "it", "its", "it's", "itself", "just", "latter",
        "latterly", "least", "less", "let's", "madam", "many", "may", "maybe", "me", "meanwhile",
        "might", "mine", "more", "moreover", "most", "mostly", "much", "must", "mustn't", "my",
        "myself", "namely", "neither", "never", "nevertheless", "next", "no", "nobody", "none",
        "nonetheless", "nor", "not", "nothing", "now", "nowhere", "of", "off", "often", "on",
        "once", "one", "only", "onto", "or", "other", "others", "otherwise", "our", "ours",
        "ourselves", "out", "over", "own", "per", "perhaps", "please", "quite", "rather", "re",
        "same", "seem", "seemed", "seeming", "seems", "several", "shall", "shan't", "she",
        "should", "shouldn't", "since", "so", "some", "somebody", "somehow", "someone",
        "something", "sometime", "sometimes", "somewhere", "still", "such", "than", "that",
        "that's", "the", "their", "theirs", "them", "themselves", "then", "thence", "there",
        "thereafter", "thereby", "therefore", "therein", "thereupon", "these", "they", "this",
        "those", "though", "through", "throughout", "thru", "thus", "to", "together", "too",
        "toward", "towards", "under", "until", "unto", "up", "upon", "us", "used", "very", "via",
        "was", "wasn't", "we", "well", "were", "weren't", "what", "whatever", "when", "whence",
        "whenever", "where", "whereafter", "whereas", "whereby", "wherein", "whereupon",
        "wherever", "whether", "which", "while", "whither", "who", "whoever", "whole", "whom",
        "whose", "why", "will", "with", "within", "without", "won't", "would", "wouldn't", "yet",
        "you", "your", "yours", "yourself", "yourselves",
    };
    return words;
}

inline std::unordered_set<std::string> load_stopwords(std::istream& in) {
    std::unordered_set<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (!line.empty() && line[0] != '#') words.insert(line);
    }
    return words;
}

}  // namespace csl
