#include "claimcheck/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "claimcheck/error.hpp"
#include "claimcheck/hashing.hpp"

namespace claimcheck {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n\v\f");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n\v\f");
  return s.substr(first, last - first + 1);
}

std::string lower_ascii(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

// Fixed key order (tweet_id, topic_id, text, label, source, raw_text) keeps
// the JSON-lines output byte-stable.
nlohmann::ordered_json ordered_record(const TweetRecord& record) {
  nlohmann::ordered_json object;
  object["tweet_id"] = record.tweet_id;
  object["topic_id"] = record.topic_id;
  object["text"] = record.text;
  object["label"] = to_string(record.label);
  object["source"] = to_string(record.source);
  if (record.raw_text) object["raw_text"] = *record.raw_text;
  return object;
}

}  // namespace

std::string_view to_string(Label label) noexcept { return label == Label::CW ? "CW" : "NCW"; }

std::string_view to_string(Source source) noexcept { return source == Source::CT20 ? "CT20" : "CT21"; }

std::optional<Label> try_parse_label(std::string_view value) {
  const auto key = lower_ascii(trim(value));
  if (key == "1" || key == "cw" || key == "checkworthy") return Label::CW;
  if (key == "0" || key == "ncw") return Label::NCW;
  return std::nullopt;
}

Label parse_label(std::string_view value) {
  if (auto label = try_parse_label(value)) return *label;
  throw InvalidArgument(fmt::format("unknown label value '{}'", value));
}

Source parse_source(std::string_view value) {
  const auto key = lower_ascii(trim(value));
  if (key == "ct20") return Source::CT20;
  if (key == "ct21") return Source::CT21;
  throw InvalidArgument(fmt::format("unknown source '{}'", value));
}

const std::vector<Topic>& canonical_topics() {
  static const std::vector<Topic> topics = {
      {"CT20-AR-01", "Deal of the century", {"CT20-AR-01"}},
      {"CT20-AR-02", "Houthis in Yemen", {"CT20-AR-02"}},
      {"CT20-AR-05", "Protests in Lebanon", {"CT20-AR-05"}},
      {"CT20-AR-08", "Feminists", {"CT20-AR-08"}},
      {"CT20-AR-10", "Waseem Youssef", {"CT20-AR-10"}},
      {"CT20-AR-12", "Sudan and normalization", {"CT20-AR-12"}},
      {"CT20-AR-14", "Events in Libya", {"CT20-AR-14"}},
      {"CT20-AR-19", "Turkey's intervention in Syria", {"CT20-AR-19"}},
      {"CT20-AR-23", "The case of the Bidoon in Kuwait", {"CT20-AR-23"}},
      {"CT20-AR-27", "Algeria", {"CT20-AR-27"}},
      {"CT20-AR-30", "Boycotting countries and spreading rumors against Qatar", {"CT20-AR-30"}},
      {std::string(kCovidTopicId), "COVID-19", {"CT20-AR-03", "CT20-AR-28_w1", "CT20-AR-28_w2", "CT20-AR-29"}},
      {"CT21-AR-01", "Events in Gulf", {"CT21-AR-01"}},
      {"CT21-AR-02", "Events in USA", {"CT21-AR-02"}},
  };
  return topics;
}

std::size_t canonical_rank(std::string_view topic_id) {
  const auto& topics = canonical_topics();
  for (std::size_t i = 0; i < topics.size(); ++i) {
    if (topics[i].topic_id == topic_id) return i;
  }
  return topics.size();
}

bool is_canonical_topic(std::string_view topic_id) { return canonical_rank(topic_id) < canonical_topics().size(); }

MergeTable default_merge_table() {
  MergeTable table;
  for (const auto& topic : canonical_topics()) {
    for (const auto& source_id : topic.source_ids) table.emplace(source_id, topic.topic_id);
  }
  return table;
}

TsvSchema TsvSchema::ct20() { return TsvSchema{}; }

TsvSchema TsvSchema::ct21() {
  TsvSchema schema;
  schema.column_count = 6;
  schema.topic_column = 0;
  schema.id_column = 1;
  schema.text_column = 3;
  schema.claim_column = 4;
  schema.label_column = 5;
  schema.has_header = true;
  schema.source = Source::CT21;
  return schema;
}

TsvSchema TsvSchema::preset(std::string_view name) {
  const auto key = lower_ascii(name);
  if (key == "ct20") return ct20();
  if (key == "ct21") return ct21();
  throw InvalidArgument(fmt::format("unknown TSV schema preset '{}' (expected ct20 or ct21)", name));
}

TweetRecord normalize_labels(const RawRecord& record) {
  if (!record.check_worthiness || trim(*record.check_worthiness).empty()) {
    throw InvalidArgument(fmt::format("tweet {}: missing check-worthiness label", record.tweet_id));
  }
  TweetRecord out;
  out.tweet_id = record.tweet_id;
  out.topic_id = record.topic_id;
  out.text = record.text;
  out.label = parse_label(*record.check_worthiness);
  out.source = record.source;
  return out;
}

std::vector<TweetRecord> parse_tsv(std::istream& in, const TsvSchema& schema, std::string_view origin) {
  const std::size_t max_column = std::max({schema.topic_column, schema.id_column, schema.text_column,
                                           schema.label_column, schema.claim_column.value_or(0)});
  if (max_column >= schema.column_count) {
    throw InvalidArgument(fmt::format("TSV schema references column {} but declares {} columns", max_column,
                                      schema.column_count));
  }

  std::vector<TweetRecord> records;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_number = 0;
  bool header_pending = schema.has_header;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_number == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    if (trim(line).empty()) continue;
    if (header_pending) {
      header_pending = false;
      continue;
    }
    const auto fields = split_tabs(line);
    if (fields.size() != schema.column_count) {
      throw ParseError(std::string(origin), line_number,
                       fmt::format("expected {} tab-separated columns, found {}", schema.column_count, fields.size()));
    }
    RawRecord raw;
    raw.topic_id = std::string(trim(fields[schema.topic_column]));
    raw.tweet_id = std::string(trim(fields[schema.id_column]));
    raw.text = std::string(fields[schema.text_column]);
    raw.check_worthiness = std::string(fields[schema.label_column]);
    if (schema.claim_column) raw.claim = std::string(fields[*schema.claim_column]);
    raw.source = schema.source;

    if (raw.tweet_id.empty()) throw ParseError(std::string(origin), line_number, "empty tweet id");
    if (trim(raw.text).empty()) throw ParseError(std::string(origin), line_number, "empty tweet text");
    try {
      records.push_back(normalize_labels(raw));
    } catch (const InvalidArgument& e) {
      throw ParseError(std::string(origin), line_number, e.what());
    }
    if (!seen.insert(raw.tweet_id).second) {
      throw ParseError(std::string(origin), line_number, fmt::format("duplicate tweet_id '{}'", raw.tweet_id));
    }
  }
  return records;
}

std::vector<TweetRecord> load_tsv(const std::filesystem::path& path, const TsvSchema& schema) {
  std::ifstream in(path);
  if (!in) throw Error(fmt::format("cannot open '{}'", path.string()));
  return parse_tsv(in, schema, path.string());
}

CombineResult combine_sources(std::span<const std::vector<TweetRecord>> batches) {
  // CT20 batches first so that the CT20 copy of an overlapping tweet is kept
  // regardless of argument order.
  CombineResult result;
  std::unordered_map<std::string, Source> seen;
  for (Source pass : {Source::CT20, Source::CT21}) {
    for (const auto& batch : batches) {
      for (const auto& record : batch) {
        if (record.source != pass) continue;
        auto [it, inserted] = seen.emplace(record.tweet_id, record.source);
        if (inserted) {
          result.records.push_back(record);
        } else if (it->second == Source::CT20 && record.source == Source::CT21) {
          ++result.overlapping_removed;
        } else {
          throw InvalidArgument(fmt::format("duplicate tweet_id '{}' within {} files", record.tweet_id,
                                            to_string(record.source)));
        }
      }
    }
  }
  return result;
}

std::vector<TweetRecord> merge_covid_topics(std::vector<TweetRecord> records, const MergeTable& merge_table) {
  for (auto& record : records) {
    const auto it = merge_table.find(record.topic_id);
    if (it == merge_table.end()) {
      throw InvalidArgument(
          fmt::format("tweet {}: topic '{}' is not in the merge table", record.tweet_id, record.topic_id));
    }
    record.topic_id = it->second;
  }
  return records;
}

Corpus::Corpus(std::vector<TweetRecord> records) : records_(std::move(records)) {
  index_.reserve(records_.size());
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const auto& record = records_[i];
    if (trim(record.text).empty()) throw InvalidArgument(fmt::format("tweet {}: empty text", record.tweet_id));
    if (!is_canonical_topic(record.topic_id)) {
      throw InvalidArgument(fmt::format("tweet {}: non-canonical topic '{}'", record.tweet_id, record.topic_id));
    }
    if (!index_.emplace(record.tweet_id, i).second) {
      throw InvalidArgument(fmt::format("duplicate tweet_id '{}'", record.tweet_id));
    }
    by_topic_[record.topic_id].push_back(i);
  }
  for (auto& [topic, indices] : by_topic_) {
    std::sort(indices.begin(), indices.end(),
              [&](std::size_t a, std::size_t b) { return records_[a].tweet_id < records_[b].tweet_id; });
    topic_ids_.push_back(topic);
  }
  std::sort(topic_ids_.begin(), topic_ids_.end(),
            [](const std::string& a, const std::string& b) { return canonical_rank(a) < canonical_rank(b); });

  std::ostringstream canonical;
  write_jsonl(canonical, records_);
  hash_ = sha256_hex(canonical.str());
}

const TweetRecord* Corpus::find(std::string_view tweet_id) const {
  const auto it = index_.find(std::string(tweet_id));
  return it == index_.end() ? nullptr : &records_[it->second];
}

const TweetRecord& Corpus::at(std::string_view tweet_id) const {
  if (const auto* record = find(tweet_id)) return *record;
  throw InvalidArgument(fmt::format("unknown tweet_id '{}'", tweet_id));
}

bool Corpus::has_topic(std::string_view topic_id) const { return by_topic_.find(topic_id) != by_topic_.end(); }

std::vector<const TweetRecord*> Corpus::records_of(std::string_view topic_id) const {
  std::vector<const TweetRecord*> out;
  if (const auto it = by_topic_.find(topic_id); it != by_topic_.end()) {
    out.reserve(it->second.size());
    for (auto i : it->second) out.push_back(&records_[i]);
  }
  return out;
}

CorpusStats corpus_stats(const Corpus& corpus) {
  if (corpus.empty()) throw InvalidArgument("corpus_stats: empty corpus");
  CorpusStats stats;
  std::size_t cw_total = 0;
  for (const auto& record : corpus.records()) {
    auto& counts = stats.per_topic[record.topic_id];
    if (record.label == Label::CW) {
      ++counts.cw;
      ++cw_total;
    } else {
      ++counts.ncw;
    }
  }
  stats.total_count = corpus.size();
  stats.overall_cw_fraction = static_cast<double>(cw_total) / static_cast<double>(stats.total_count);
  return stats;
}

nlohmann::json to_json(const TweetRecord& record) { return nlohmann::json(ordered_record(record)); }

TweetRecord record_from_json(const nlohmann::json& object) {
  TweetRecord record;
  record.tweet_id = object.at("tweet_id").get<std::string>();
  record.topic_id = object.at("topic_id").get<std::string>();
  record.text = object.at("text").get<std::string>();
  record.label = parse_label(object.at("label").get<std::string>());
  record.source = parse_source(object.value("source", std::string("CT20")));
  if (object.contains("raw_text")) record.raw_text = object.at("raw_text").get<std::string>();
  return record;
}

nlohmann::json to_json(const CorpusStats& stats) {
  nlohmann::ordered_json topics = nlohmann::ordered_json::object();
  std::vector<std::string> order;
  for (const auto& [topic, counts] : stats.per_topic) order.push_back(topic);
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& a, const auto& b) { return canonical_rank(a) < canonical_rank(b); });
  for (const auto& topic : order) {
    const auto& counts = stats.per_topic.at(topic);
    topics[topic] = {{"cw", counts.cw}, {"ncw", counts.ncw}, {"cw_fraction", counts.cw_fraction()}};
  }
  nlohmann::ordered_json out;
  out["total_count"] = stats.total_count;
  out["topic_count"] = stats.per_topic.size();
  out["overall_cw_fraction"] = stats.overall_cw_fraction;
  out["overall_ncw_fraction"] = 1.0 - stats.overall_cw_fraction;
  out["per_topic"] = topics;
  return nlohmann::json(out);
}

void write_jsonl(std::ostream& out, std::span<const TweetRecord> records) {
  for (const auto& record : records) {
    out << ordered_record(record).dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) << '\n';
  }
}

std::vector<TweetRecord> read_jsonl(std::istream& in, std::string_view origin) {
  std::vector<TweetRecord> records;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (trim(line).empty()) continue;
    try {
      records.push_back(record_from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string(origin), line_number, e.what());
    } catch (const InvalidArgument& e) {
      throw ParseError(std::string(origin), line_number, e.what());
    }
  }
  return records;
}

void save_jsonl(const std::filesystem::path& path, std::span<const TweetRecord> records) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(fmt::format("cannot write '{}'", path.string()));
  write_jsonl(out, records);
}

std::vector<TweetRecord> load_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(fmt::format("cannot open '{}'", path.string()));
  return read_jsonl(in, path.string());
}

}  // namespace claimcheck
