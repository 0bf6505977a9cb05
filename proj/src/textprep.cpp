#include "sentistream/textprep.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <regex>
#include <sstream>

#include "sentistream/errors.hpp"

namespace sentistream::textprep {

namespace {

bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool is_ascii_digit(char c) { return c >= '0' && c <= '9'; }
bool is_ascii_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_ascii_alnum(char c) { return is_ascii_digit(c) || is_ascii_lower(c); }

const std::regex& url_re() {
  static const std::regex re(R"((https?://|www\.)[^\s]+)");
  return re;
}

// Currency symbol or code adjacent to a number. The unicode symbols are
// matched as literal byte sequences, so no character classes around them.
const std::regex& price_re() {
  static const std::regex re(
      R"((\$|€|£|¥)\s?[0-9]+([.,][0-9]+)*)"
      R"(|[0-9]+([.,][0-9]+)*\s?(usd|eur|gbp|dollars?|bucks?|cents?)\b)");
  return re;
}

const std::regex& rating_re() {
  static const std::regex re(
      R"([0-9]+(\.[0-9]+)?\s*/\s*(5|10)(?![0-9]))"
      R"(|[0-9]+(\.[0-9]+)?[- ]?stars?\b)");
  return re;
}

struct Span {
  std::size_t begin, end;
};

bool overlaps(const Span& a, std::size_t begin, std::size_t end) {
  return begin < a.end && a.begin < end;
}

void collect_regex_entities(const std::string& text, const std::regex& re,
                            EntityKind kind, std::vector<EntityMention>& out) {
  auto it = std::sregex_iterator(text.begin(), text.end(), re);
  for (; it != std::sregex_iterator(); ++it) {
    EntityMention m;
    m.kind = kind;
    m.begin = static_cast<std::size_t>(it->position());
    m.end = m.begin + static_cast<std::size_t>(it->length());
    m.surface = it->str();
    out.push_back(std::move(m));
  }
}

// Maximal [a-z0-9] runs with at least two letters and two digits.
void collect_product_codes(const std::string& text,
                           std::vector<EntityMention>& out) {
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    if (!is_ascii_alnum(text[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    int letters = 0, digits = 0;
    while (j < n && is_ascii_alnum(text[j])) {
      if (is_ascii_digit(text[j])) {
        ++digits;
      } else {
        ++letters;
      }
      ++j;
    }
    if (letters >= 2 && digits >= 2) {
      EntityMention m;
      m.kind = EntityKind::ProductCode;
      m.begin = i;
      m.end = j;
      m.surface = text.substr(i, j - i);
      out.push_back(std::move(m));
    }
    i = j;
  }
}

std::string collapse_whitespace(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  bool in_space = true;  // swallow leading spaces
  for (char c : s) {
    if (is_ascii_space(c)) {
      if (!in_space) out.push_back(' ');
      in_space = true;
    } else {
      out.push_back(c);
      in_space = false;
    }
  }
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

// Digit runs ([0-9] with interior . or ,) that form a whole token become
// <num>; runs touching letters (4k, ab12cd) or inside entity spans stay.
std::string replace_standalone_numbers(const std::string& s,
                                       const std::vector<Span>& protect,
                                       bool& changed) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  const std::size_t n = s.size();
  while (i < n) {
    if (!is_ascii_digit(s[i])) {
      out.push_back(s[i]);
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < n &&
           (is_ascii_digit(s[j]) ||
            ((s[j] == '.' || s[j] == ',') && j + 1 < n &&
             is_ascii_digit(s[j + 1])))) {
      ++j;
    }
    const bool left_glued = i > 0 && is_ascii_alnum(s[i - 1]);
    const bool right_glued = j < n && is_ascii_alnum(s[j]);
    bool inside_entity = false;
    for (const auto& sp : protect) {
      if (overlaps(sp, i, j)) {
        inside_entity = true;
        break;
      }
    }
    if (!left_glued && !right_glued && !inside_entity) {
      out += "<num>";
      changed = true;
    } else {
      out.append(s, i, j - i);
    }
    i = j;
  }
  return out;
}

bool is_placeholder(const std::string& tok) {
  return tok.size() >= 3 && tok.front() == '<' && tok.back() == '>';
}

constexpr std::uint64_t kFnvOffset = 1469598103934665603ull;
constexpr std::uint64_t kFnvPrime = 1099511628211ull;

std::uint64_t fnv1a(const std::string& data, std::uint64_t h = kFnvOffset) {
  for (unsigned char c : data) {
    h ^= c;
    h *= kFnvPrime;
  }
  return h;
}

}  // namespace

NormalizedText normalize(const std::string& raw) {
  NormalizedText result;
  auto step = [&result](const char* name, std::string next, std::string& cur) {
    if (next != cur) {
      result.applied_steps.emplace_back(name);
      cur = std::move(next);
    }
  };

  std::string text = raw;

  {
    std::string next = text;
    for (char& c : next) {
      if ((static_cast<unsigned char>(c) < 0x20 || c == 0x7f)) c = ' ';
    }
    step("strip_control", std::move(next), text);
  }
  {
    std::string next = text;
    for (char& c : next) {
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    step("lowercase", std::move(next), text);
  }
  step("replace_urls", std::regex_replace(text, url_re(), "<url>"), text);
  step("collapse_whitespace", collapse_whitespace(text), text);

  {
    // Entity spans computed on the collapsed text protect their digits.
    std::vector<Span> protect;
    for (const auto& m : extract_entities(text)) {
      protect.push_back({m.begin, m.end});
    }
    bool changed = false;
    std::string next = replace_standalone_numbers(text, protect, changed);
    if (changed) {
      result.applied_steps.emplace_back("replace_numbers");
      text = std::move(next);
    }
  }

  result.text = std::move(text);
  return result;
}

namespace {

const std::vector<std::string>& placeholders() {
  static const std::vector<std::string> ps = {"<pad>", "<unk>", "<url>",
                                              "<num>"};
  return ps;
}

void emit_plain_segment(const std::string& seg,
                        std::vector<std::string>& tokens) {
  std::size_t b = 0, e = seg.size();
  while (b < e && std::ispunct(static_cast<unsigned char>(seg[b]))) ++b;
  while (e > b && std::ispunct(static_cast<unsigned char>(seg[e - 1]))) --e;
  for (std::size_t k = 0; k < b; ++k) tokens.push_back(seg.substr(k, 1));
  if (e > b) tokens.push_back(seg.substr(b, e - b));
  for (std::size_t k = e; k < seg.size(); ++k) {
    tokens.push_back(seg.substr(k, 1));
  }
}

// Placeholders are atomic even when punctuation glues onto them
// ("<num>," splits into "<num>" and ",").
void emit_chunk(const std::string& chunk, std::vector<std::string>& tokens) {
  std::size_t pos = 0;
  std::string plain;
  while (pos < chunk.size()) {
    const std::string* hit = nullptr;
    for (const auto& p : placeholders()) {
      if (chunk.compare(pos, p.size(), p) == 0) {
        hit = &p;
        break;
      }
    }
    if (hit) {
      if (!plain.empty()) {
        emit_plain_segment(plain, tokens);
        plain.clear();
      }
      tokens.push_back(*hit);
      pos += hit->size();
    } else {
      plain.push_back(chunk[pos]);
      ++pos;
    }
  }
  if (!plain.empty()) emit_plain_segment(plain, tokens);
}

}  // namespace

std::vector<std::string> tokenize(const std::string& normalized) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  const std::size_t n = normalized.size();
  while (i < n) {
    while (i < n && is_ascii_space(normalized[i])) ++i;
    if (i >= n) break;
    std::size_t j = i;
    while (j < n && !is_ascii_space(normalized[j])) ++j;
    emit_chunk(normalized.substr(i, j - i), tokens);
    i = j;
  }
  return tokens;
}

std::vector<std::string> tokenize(const NormalizedText& t) {
  return tokenize(t.text);
}

// ---------------------------------------------------------------------------

Vocabulary::Vocabulary() {
  add("<pad>");
  add("<unk>");
  add("<url>");
  add("<num>");
}

void Vocabulary::add(const std::string& token) {
  token_to_id_.emplace(token, static_cast<std::int32_t>(id_to_token_.size()));
  id_to_token_.push_back(token);
}

std::int32_t Vocabulary::id_of(const std::string& token) const {
  auto it = token_to_id_.find(token);
  return it == token_to_id_.end() ? kUnk : it->second;
}

bool Vocabulary::contains(const std::string& token) const {
  return token_to_id_.count(token) > 0;
}

const std::string& Vocabulary::token_of(std::int32_t id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= id_to_token_.size()) {
    throw InvalidInputError("token id out of range: " + std::to_string(id));
  }
  return id_to_token_[static_cast<std::size_t>(id)];
}

void Vocabulary::save(const std::string& path) const {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write vocabulary file: " + path);
  for (std::size_t i = 0; i < id_to_token_.size(); ++i) {
    out << id_to_token_[i] << '\t' << i << '\n';
  }
  if (!out) throw IoError("write failure on vocabulary file: " + path);
}

Vocabulary Vocabulary::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read vocabulary file: " + path);
  Vocabulary v;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw IoError("malformed vocabulary line " + std::to_string(line_no));
    }
    std::string token = line.substr(0, tab);
    std::int32_t id = std::stoi(line.substr(tab + 1));
    if (id < 4) {
      if (v.token_of(id) != token) {
        throw IoError("special token mismatch in vocabulary: " + token);
      }
      continue;
    }
    if (static_cast<std::size_t>(id) != v.id_to_token_.size()) {
      throw IoError("non-dense vocabulary ids at line " +
                    std::to_string(line_no));
    }
    if (v.token_to_id_.count(token)) {
      throw IoError("duplicate vocabulary token: " + token);
    }
    v.add(token);
  }
  return v;
}

std::uint64_t Vocabulary::hash() const {
  std::uint64_t h = kFnvOffset;
  for (std::size_t i = 0; i < id_to_token_.size(); ++i) {
    h = fnv1a(id_to_token_[i], h);
    h ^= i;
    h *= kFnvPrime;
  }
  return h;
}

Vocabulary build_vocabulary(const std::vector<std::string>& corpus_tokens,
                            int min_frequency) {
  if (min_frequency < 1) {
    throw InvalidInputError("min_frequency must be >= 1");
  }
  Vocabulary v;
  v.min_frequency_ = min_frequency;
  std::unordered_map<std::string, std::int64_t> freq;
  for (const auto& tok : corpus_tokens) {
    if (v.contains(tok)) continue;  // specials appearing in text
    ++freq[tok];
  }
  std::vector<std::pair<std::string, std::int64_t>> entries;
  entries.reserve(freq.size());
  for (auto& kv : freq) {
    if (kv.second >= min_frequency) entries.emplace_back(kv.first, kv.second);
  }
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  for (auto& e : entries) v.add(e.first);
  return v;
}

std::vector<std::int32_t> encode(const std::vector<std::string>& tokens,
                                 const Vocabulary& vocab, int max_len) {
  if (max_len < 1) throw InvalidInputError("max_len must be >= 1");
  std::vector<std::int32_t> ids;
  ids.reserve(std::min<std::size_t>(tokens.size(),
                                    static_cast<std::size_t>(max_len)));
  for (const auto& tok : tokens) {
    if (ids.size() >= static_cast<std::size_t>(max_len)) break;
    ids.push_back(vocab.id_of(tok));
  }
  return ids;
}

std::vector<std::string> decode(const std::vector<std::int32_t>& ids,
                                const Vocabulary& vocab) {
  std::vector<std::string> out;
  out.reserve(ids.size());
  for (auto id : ids) out.push_back(vocab.token_of(id));
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::map<std::string, std::int64_t> trigram_counts(const std::string& text) {
  std::map<std::string, std::int64_t> counts;
  if (text.size() < 3) return counts;
  for (std::size_t i = 0; i + 3 <= text.size(); ++i) {
    ++counts[text.substr(i, 3)];
  }
  return counts;
}

double cosine(const std::map<std::string, double>& a,
              const std::map<std::string, double>& b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (const auto& [k, v] : a) {
    na += v * v;
    auto it = b.find(k);
    if (it != b.end()) dot += v * it->second;
  }
  for (const auto& [k, v] : b) nb += v * v;
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

}  // namespace

LanguageProfile build_language_profile(const std::string& tag,
                                       const std::vector<std::string>& texts,
                                       std::size_t top_k) {
  std::map<std::string, std::int64_t> counts;
  std::int64_t total = 0;
  for (const auto& t : texts) {
    for (const auto& [tri, c] : trigram_counts(t)) {
      counts[tri] += c;
      total += c;
    }
  }
  std::vector<std::pair<std::string, std::int64_t>> ranked(counts.begin(),
                                                           counts.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (ranked.size() > top_k) ranked.resize(top_k);

  LanguageProfile p;
  p.tag = tag;
  for (const auto& [tri, c] : ranked) {
    p.trigram_freq[tri] =
        total > 0 ? static_cast<double>(c) / static_cast<double>(total) : 0.0;
  }
  return p;
}

double profile_similarity(const LanguageProfile& a, const LanguageProfile& b) {
  return cosine(a.trigram_freq, b.trigram_freq);
}

LanguageGuess detect_language(const std::string& text,
                              const std::vector<LanguageProfile>& profiles,
                              double threshold) {
  if (profiles.empty()) {
    throw InvalidInputError("detect_language requires at least one profile");
  }
  LanguageGuess guess;
  if (text.size() < 20) return guess;

  auto counts = trigram_counts(text);
  std::int64_t total = 0;
  for (const auto& [tri, c] : counts) total += c;
  std::map<std::string, double> query;
  for (const auto& [tri, c] : counts) {
    query[tri] = static_cast<double>(c) / static_cast<double>(total);
  }

  const LanguageProfile* best = nullptr;
  double best_sim = -1.0;
  for (const auto& p : profiles) {
    double sim = cosine(query, p.trigram_freq);
    if (sim > best_sim || (sim == best_sim && best && p.tag < best->tag)) {
      best = &p;
      best_sim = sim;
    }
  }
  guess.similarity = best_sim;
  if (best_sim >= threshold) guess.language = best->tag;
  return guess;
}

void LanguageProfile::save(const std::string& path) const {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write language profile: " + path);
  out << "language\t" << tag << '\n';
  char buf[64];
  for (const auto& [tri, f] : trigram_freq) {
    std::snprintf(buf, sizeof(buf), "%.17g", f);
    out << tri << '\t' << buf << '\n';
  }
  if (!out) throw IoError("write failure on language profile: " + path);
}

LanguageProfile LanguageProfile::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read language profile: " + path);
  std::string line;
  if (!std::getline(in, line)) {
    throw IoError("empty language profile: " + path);
  }
  auto tab = line.find('\t');
  if (tab == std::string::npos || line.substr(0, tab) != "language") {
    throw IoError("language profile missing header: " + path);
  }
  LanguageProfile p;
  p.tag = line.substr(tab + 1);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    tab = line.find('\t');
    if (tab == std::string::npos) {
      throw IoError("malformed language profile line in " + path);
    }
    p.trigram_freq[line.substr(0, tab)] = std::stod(line.substr(tab + 1));
  }
  return p;
}

// ---------------------------------------------------------------------------

std::vector<EntityMention> extract_entities(const std::string& normalized) {
  std::vector<EntityMention> out;
  collect_regex_entities(normalized, price_re(), EntityKind::Price, out);
  collect_regex_entities(normalized, rating_re(), EntityKind::Rating, out);
  collect_product_codes(normalized, out);
  std::stable_sort(out.begin(), out.end(),
                   [](const EntityMention& a, const EntityMention& b) {
                     if (a.begin != b.begin) return a.begin < b.begin;
                     return a.end < b.end;
                   });
  return out;
}

std::vector<EntityMention> extract_entities(const NormalizedText& t) {
  return extract_entities(t.text);
}

const char* entity_kind_name(EntityKind k) {
  switch (k) {
    case EntityKind::Price:
      return "price";
    case EntityKind::Rating:
      return "rating";
    case EntityKind::ProductCode:
      return "product_code";
  }
  return "unknown";
}

}  // namespace sentistream::textprep
