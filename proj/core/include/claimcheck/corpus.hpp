#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace claimcheck {

enum class Label { CW, NCW };
enum class Source { CT20, CT21 };

std::string_view to_string(Label label) noexcept;
std::string_view to_string(Source source) noexcept;

// Accepts {"1","CW","checkworthy"} and {"0","NCW"}, case-insensitive,
// surrounding whitespace ignored.
std::optional<Label> try_parse_label(std::string_view value);
Label parse_label(std::string_view value);
Source parse_source(std::string_view value);

struct TweetRecord {
  std::string tweet_id;
  std::string topic_id;
  std::string text;
  Label label = Label::NCW;
  Source source = Source::CT20;
  // Set once the text has been normalized; holds the original tweet.
  std::optional<std::string> raw_text;

  bool operator==(const TweetRecord&) const = default;
};

struct Topic {
  std::string topic_id;
  std::string title;
  std::vector<std::string> source_ids;
};

inline constexpr std::string_view kCovidTopicId = "COVID-19";

// The 14 canonical topics, in report order.
const std::vector<Topic>& canonical_topics();
bool is_canonical_topic(std::string_view topic_id);
// Position in report order, or npos-like size() for unknown ids.
std::size_t canonical_rank(std::string_view topic_id);

using MergeTable = std::map<std::string, std::string, std::less<>>;

// The four COVID source topics map to "COVID-19"; the other 13 map to themselves.
MergeTable default_merge_table();

// Column layout of one shared-task TSV file.
struct TsvSchema {
  std::size_t column_count = 4;
  std::size_t topic_column = 0;
  std::size_t id_column = 1;
  std::size_t text_column = 2;
  std::size_t label_column = 3;
  std::optional<std::size_t> claim_column;
  bool has_header = false;
  Source source = Source::CT20;

  // topic_id, tweet_id, tweet_text, check_worthiness; no header.
  static TsvSchema ct20();
  // topic_id, tweet_id, tweet_url, tweet_text, claim, check_worthiness; header row.
  static TsvSchema ct21();
  static TsvSchema preset(std::string_view name);
};

// One row before label normalization. CT21 rows carry a claim level as well.
struct RawRecord {
  std::string topic_id;
  std::string tweet_id;
  std::string text;
  std::optional<std::string> claim;
  std::optional<std::string> check_worthiness;
  Source source = Source::CT20;
};

// Projects a raw record onto the CW/NCW label; the claim level is dropped.
TweetRecord normalize_labels(const RawRecord& record);

std::vector<TweetRecord> parse_tsv(std::istream& in, const TsvSchema& schema, std::string_view origin);
std::vector<TweetRecord> load_tsv(const std::filesystem::path& path, const TsvSchema& schema);

struct CombineResult {
  std::vector<TweetRecord> records;
  std::size_t overlapping_removed = 0;
};

// Concatenates loaded files. A CT21 record whose tweet_id already appears in a
// CT20 file is dropped (the CT20 copy wins); any other repeated id is an error.
CombineResult combine_sources(std::span<const std::vector<TweetRecord>> batches);

// Relabels every record through the merge table. Count-preserving.
std::vector<TweetRecord> merge_covid_topics(std::vector<TweetRecord> records, const MergeTable& merge_table);

// Immutable, validated set of canonical records.
class Corpus {
 public:
  Corpus() = default;
  // Throws InvalidArgument on duplicate ids, blank text or non-canonical topics.
  explicit Corpus(std::vector<TweetRecord> records);

  const std::vector<TweetRecord>& records() const noexcept { return records_; }
  std::size_t size() const noexcept { return records_.size(); }
  bool empty() const noexcept { return records_.empty(); }

  const TweetRecord* find(std::string_view tweet_id) const;
  const TweetRecord& at(std::string_view tweet_id) const;

  // Topics present in the corpus, in report order.
  const std::vector<std::string>& topic_ids() const noexcept { return topic_ids_; }
  bool has_topic(std::string_view topic_id) const;
  // Records of one topic, sorted by tweet_id.
  std::vector<const TweetRecord*> records_of(std::string_view topic_id) const;

  // SHA-256 over the canonical JSON-lines form.
  const std::string& content_hash() const noexcept { return hash_; }

 private:
  std::vector<TweetRecord> records_;
  std::unordered_map<std::string, std::size_t> index_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> by_topic_;
  std::vector<std::string> topic_ids_;
  std::string hash_;
};

struct ClassCounts {
  std::size_t cw = 0;
  std::size_t ncw = 0;

  std::size_t total() const noexcept { return cw + ncw; }
  double cw_fraction() const noexcept { return total() == 0 ? 0.0 : static_cast<double>(cw) / total(); }
};

struct CorpusStats {
  std::size_t total_count = 0;
  std::map<std::string, ClassCounts> per_topic;
  double overall_cw_fraction = 0.0;
};

CorpusStats corpus_stats(const Corpus& corpus);

nlohmann::json to_json(const TweetRecord& record);
TweetRecord record_from_json(const nlohmann::json& object);
nlohmann::json to_json(const CorpusStats& stats);

void write_jsonl(std::ostream& out, std::span<const TweetRecord> records);
std::vector<TweetRecord> read_jsonl(std::istream& in, std::string_view origin = "<stream>");
void save_jsonl(const std::filesystem::path& path, std::span<const TweetRecord> records);
std::vector<TweetRecord> load_jsonl(const std::filesystem::path& path);

}  // namespace claimcheck
