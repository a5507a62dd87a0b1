#include "claimcheck/mock_providers.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include <fmt/format.h>

#include "claimcheck/error.hpp"
#include "claimcheck/model.hpp"

namespace claimcheck::mock {

namespace {

std::string join(const std::vector<std::string>& tokens) {
  std::string out;
  for (const auto& token : tokens) {
    if (!out.empty()) out.push_back(' ');
    out += token;
  }
  return out;
}

}  // namespace

std::string ReversingTranslator::translate(std::string_view text, std::string_view, std::string_view) const {
  auto tokens = tokenize(text);
  std::reverse(tokens.begin(), tokens.end());
  return join(tokens);
}

std::string MarkerFiller::fill(std::string_view masked_text, std::string_view mask_token) const {
  auto tokens = tokenize(masked_text);
  for (auto& token : tokens) {
    if (token == mask_token) token = marker_;
  }
  return join(tokens);
}

std::string NoRepeatGenerator::generate(std::string_view prompt, const GenerationParams& params) const {
  const auto pool = tokenize(prompt);
  if (pool.empty()) return {};
  const std::size_t n = std::max<std::size_t>(params.no_repeat_ngram_size, 1);
  const std::size_t target = std::min(params.max_length, pool.size() * 2);
  std::vector<std::string> out;
  std::set<std::vector<std::string>> seen;
  std::size_t cursor = 0;
  while (out.size() < target) {
    bool placed = false;
    for (std::size_t attempt = 0; attempt < pool.size() && !placed; ++attempt) {
      const auto& candidate = pool[(cursor + attempt) % pool.size()];
      if (out.size() + 1 >= n) {
        std::vector<std::string> gram(out.end() - static_cast<std::ptrdiff_t>(n - 1), out.end());
        gram.push_back(candidate);
        if (seen.contains(gram)) continue;
        seen.insert(std::move(gram));
      }
      out.push_back(candidate);
      cursor = (cursor + attempt + 1) % pool.size();
      placed = true;
    }
    if (!placed) break;
  }
  return join(out);
}

std::string RecordingGenerator::generate(std::string_view prompt, const GenerationParams& params) const {
  {
    std::lock_guard lock(mutex_);
    last_ = params;
    ++calls_;
  }
  return inner_->generate(prompt, params);
}

std::optional<GenerationParams> RecordingGenerator::last_params() const {
  std::lock_guard lock(mutex_);
  return last_;
}

std::size_t RecordingGenerator::calls() const {
  std::lock_guard lock(mutex_);
  return calls_;
}

std::string FailingTranslator::translate(std::string_view text, std::string_view source, std::string_view target) const {
  if (text.find(trigger_) != std::string_view::npos) throw ProviderError("mock translator failure");
  return inner_->translate(text, source, target);
}

std::string FailingFiller::fill(std::string_view masked_text, std::string_view mask_token) const {
  if (masked_text.find(trigger_) != std::string_view::npos) throw ProviderError("mock filler failure");
  return inner_->fill(masked_text, mask_token);
}

std::string FailingGenerator::generate(std::string_view prompt, const GenerationParams& params) const {
  if (prompt.find(trigger_) != std::string_view::npos) throw ProviderError("mock generator failure");
  return inner_->generate(prompt, params);
}

JsonTransport encoder_transport() {
  struct State {
    std::mutex mutex;
    std::map<std::string, std::shared_ptr<const BaselineScorer>> models;
  };
  auto state = std::make_shared<State>();
  return [state](const nlohmann::json& request) -> nlohmann::json {
    const auto mode = request.at("mode").get<std::string>();
    if (mode == "train") {
      const auto texts = request.at("texts").get<std::vector<std::string>>();
      const auto labels = request.at("labels").get<std::vector<std::string>>();
      if (texts.size() != labels.size()) throw ProviderError("mock encoder: texts/labels length mismatch");
      std::vector<TrainingExample> examples;
      for (std::size_t i = 0; i < texts.size(); ++i) {
        examples.push_back({std::to_string(i), texts[i], parse_label(labels[i])});
      }
      BaselineHyperparams params;
      params.iterations = request.at("hyperparams").value("epochs", std::size_t{3}) * 50;
      auto model = std::make_shared<const BaselineScorer>(
          BaselineScorer::fit(params, request.at("hyperparams").value("seed", std::uint64_t{0}), examples));
      std::lock_guard lock(state->mutex);
      auto handle = fmt::format("mock-{}", state->models.size());
      state->models.emplace(handle, std::move(model));
      return {{"handle", handle}};
    }
    if (mode == "score") {
      std::shared_ptr<const BaselineScorer> model;
      {
        std::lock_guard lock(state->mutex);
        const auto it = state->models.find(request.at("handle").get<std::string>());
        if (it == state->models.end()) throw ProviderError("mock encoder: unknown handle");
        model = it->second;
      }
      const auto texts = request.at("texts").get<std::vector<std::string>>();
      nlohmann::json scores = nlohmann::json::array();
      for (const auto& p : model->predict(texts)) {
        const double cw = std::clamp(p.cw, 1e-12, 1.0 - 1e-12);
        // logit pair (NCW, CW) whose softmax recovers p.
        scores.push_back({0.0, std::log(cw / (1.0 - cw))});
      }
      return {{"scores", std::move(scores)}, {"classes", {"NCW", "CW"}}};
    }
    throw ProviderError(fmt::format("mock encoder: unknown mode '{}'", mode));
  };
}

JsonTransport unreachable_transport(std::shared_ptr<std::size_t> calls) {
  return [calls](const nlohmann::json&) -> nlohmann::json {
    if (calls) ++*calls;
    throw ProviderError("connection refused");
  };
}

std::vector<Vector> LookupEmbedder::embed(std::span<const std::string> texts) const {
  std::vector<Vector> out;
  out.reserve(texts.size());
  for (const auto& text : texts) {
    const auto it = table_.find(text);
    if (it == table_.end()) throw ProviderError("lookup embedder: unknown text '" + text + "'");
    out.push_back(it->second);
  }
  return out;
}

std::vector<Vector> ScaledEmbedder::embed(std::span<const std::string> texts) const {
  auto out = inner_->embed(texts);
  for (auto& v : out) {
    for (auto& x : v) x *= factor_;
  }
  return out;
}

AugmentProviders default_providers() {
  return {std::make_shared<IdentityTranslator>(), std::make_shared<MarkerFiller>(), std::make_shared<EchoGenerator>()};
}

}  // namespace claimcheck::mock
