#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace sentistream::textprep {

// ---------------------------------------------------------------------------
// Normalization

struct NormalizedText {
  std::string text;
  std::vector<std::string> applied_steps;  // steps that changed the input
};

// Lowercases (ASCII), strips control characters, replaces URLs with <url>,
// collapses whitespace, and replaces standalone numbers with <num>. Numbers
// that belong to a detected entity (price, rating, product code) are left
// intact so entity extraction still sees them. Idempotent.
NormalizedText normalize(const std::string& raw);

// Whitespace split, then leading/trailing ASCII punctuation becomes its own
// token. <url>/<num> placeholders pass through whole. Interior punctuation
// (don't, 19.99, 4/5) stays inside the token.
std::vector<std::string> tokenize(const std::string& normalized);
std::vector<std::string> tokenize(const NormalizedText& t);

// ---------------------------------------------------------------------------
// Vocabulary

class Vocabulary {
 public:
  static constexpr std::int32_t kPad = 0;
  static constexpr std::int32_t kUnk = 1;
  static constexpr std::int32_t kUrl = 2;
  static constexpr std::int32_t kNum = 3;

  Vocabulary();  // specials only

  std::int32_t id_of(const std::string& token) const;  // kUnk when absent
  const std::string& token_of(std::int32_t id) const;
  std::size_t size() const { return id_to_token_.size(); }
  int min_frequency() const { return min_frequency_; }
  bool contains(const std::string& token) const;

  void save(const std::string& path) const;  // token<TAB>id lines
  static Vocabulary load(const std::string& path);

  // FNV-1a over the serialized form; stored in model checkpoints so a model
  // is never paired with the wrong vocabulary.
  std::uint64_t hash() const;

  friend Vocabulary build_vocabulary(const std::vector<std::string>&, int);

 private:
  void add(const std::string& token);
  std::unordered_map<std::string, std::int32_t> token_to_id_;
  std::vector<std::string> id_to_token_;
  int min_frequency_ = 1;
};

// Tokens with frequency >= min_frequency, ids dense from 4, assigned in
// descending frequency then lexicographic order.
Vocabulary build_vocabulary(const std::vector<std::string>& corpus_tokens,
                            int min_frequency);

// Unknown tokens map to <unk>; output truncated to max_len. Padding is a
// batch-level concern, the returned sequence is unpadded.
std::vector<std::int32_t> encode(const std::vector<std::string>& tokens,
                                 const Vocabulary& vocab, int max_len);

std::vector<std::string> decode(const std::vector<std::int32_t>& ids,
                                const Vocabulary& vocab);

// ---------------------------------------------------------------------------
// Language detection (character trigrams + cosine)

struct LanguageProfile {
  std::string tag;
  std::map<std::string, double> trigram_freq;  // top-K, relative frequencies

  void save(const std::string& path) const;
  static LanguageProfile load(const std::string& path);
};

LanguageProfile build_language_profile(const std::string& tag,
                                       const std::vector<std::string>& texts,
                                       std::size_t top_k = 300);

// Cosine similarity over the trigram frequency vectors.
double profile_similarity(const LanguageProfile& a, const LanguageProfile& b);

struct LanguageGuess {
  std::optional<std::string> language;  // nullopt = unknown
  double similarity = 0.0;
};

// Argmax cosine between the text's trigram profile and each candidate.
// Unknown when the best similarity is below threshold or the text is
// shorter than 20 characters. Ties break to the lexicographically
// smaller tag.
LanguageGuess detect_language(const std::string& text,
                              const std::vector<LanguageProfile>& profiles,
                              double threshold);

// ---------------------------------------------------------------------------
// Entity extraction

enum class EntityKind { Price, Rating, ProductCode };

struct EntityMention {
  EntityKind kind;
  std::size_t begin = 0;  // byte offsets into the normalized text
  std::size_t end = 0;
  std::string surface;
};

// Pattern-based extraction over normalized text. Price: currency symbol or
// code adjacent to a number. Rating: "4/5", "9/10", "4 stars". ProductCode:
// alphanumeric token with >=2 letters and >=2 digits. Left-to-right,
// non-overlapping within a kind.
std::vector<EntityMention> extract_entities(const std::string& normalized);
std::vector<EntityMention> extract_entities(const NormalizedText& t);

const char* entity_kind_name(EntityKind k);

}  // namespace sentistream::textprep
