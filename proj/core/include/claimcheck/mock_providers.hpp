#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

#include "claimcheck/augment.hpp"
#include "claimcheck/providers.hpp"
#include "claimcheck/topicsim.hpp"

// Deterministic in-process providers for tests and offline runs.
namespace claimcheck::mock {

class IdentityTranslator final : public Translator {
 public:
  std::string translate(std::string_view text, std::string_view, std::string_view) const override {
    return std::string(text);
  }
};

// Reverses word order; applied twice it restores the original.
class ReversingTranslator final : public Translator {
 public:
  std::string translate(std::string_view text, std::string_view, std::string_view) const override;
};

// Fills every mask with a fixed marker word.
class MarkerFiller final : public MaskFiller {
 public:
  explicit MarkerFiller(std::string marker = "MARKER") : marker_(std::move(marker)) {}
  std::string fill(std::string_view masked_text, std::string_view mask_token) const override;

 private:
  std::string marker_;
};

class EchoGenerator final : public TextGenerator {
 public:
  std::string generate(std::string_view prompt, const GenerationParams&) const override { return std::string(prompt); }
};

// Continues the prompt by cycling its words, never emitting a repeated n-gram
// of size params.no_repeat_ngram_size and never exceeding params.max_length.
class NoRepeatGenerator final : public TextGenerator {
 public:
  std::string generate(std::string_view prompt, const GenerationParams& params) const override;
};

// Records the parameters of the last call, then delegates.
class RecordingGenerator final : public TextGenerator {
 public:
  explicit RecordingGenerator(std::shared_ptr<const TextGenerator> inner) : inner_(std::move(inner)) {}
  std::string generate(std::string_view prompt, const GenerationParams& params) const override;
  std::optional<GenerationParams> last_params() const;
  std::size_t calls() const;

 private:
  std::shared_ptr<const TextGenerator> inner_;
  mutable std::mutex mutex_;
  mutable std::optional<GenerationParams> last_;
  mutable std::size_t calls_ = 0;
};

// Throws ProviderError whenever the input contains `trigger`.
class FailingTranslator final : public Translator {
 public:
  FailingTranslator(std::shared_ptr<const Translator> inner, std::string trigger)
      : inner_(std::move(inner)), trigger_(std::move(trigger)) {}
  std::string translate(std::string_view text, std::string_view source, std::string_view target) const override;

 private:
  std::shared_ptr<const Translator> inner_;
  std::string trigger_;
};

class FailingFiller final : public MaskFiller {
 public:
  FailingFiller(std::shared_ptr<const MaskFiller> inner, std::string trigger)
      : inner_(std::move(inner)), trigger_(std::move(trigger)) {}
  std::string fill(std::string_view masked_text, std::string_view mask_token) const override;

 private:
  std::shared_ptr<const MaskFiller> inner_;
  std::string trigger_;
};

class FailingGenerator final : public TextGenerator {
 public:
  FailingGenerator(std::shared_ptr<const TextGenerator> inner, std::string trigger)
      : inner_(std::move(inner)), trigger_(std::move(trigger)) {}
  std::string generate(std::string_view prompt, const GenerationParams& params) const override;

 private:
  std::shared_ptr<const TextGenerator> inner_;
  std::string trigger_;
};

// In-process implementation of the encoder provider JSON contract, backed by
// the baseline scorer. Handles are "mock-<n>".
JsonTransport encoder_transport();

// Transport that always fails; counts calls through `calls` when given.
JsonTransport unreachable_transport(std::shared_ptr<std::size_t> calls = nullptr);

// Returns the vector registered for each text; unknown texts throw.
class LookupEmbedder final : public Embedder {
 public:
  explicit LookupEmbedder(std::map<std::string, Vector, std::less<>> table) : table_(std::move(table)) {}
  std::vector<Vector> embed(std::span<const std::string> texts) const override;

 private:
  std::map<std::string, Vector, std::less<>> table_;
};

// Multiplies every vector of `inner` by `factor`.
class ScaledEmbedder final : public Embedder {
 public:
  ScaledEmbedder(std::shared_ptr<const Embedder> inner, double factor) : inner_(std::move(inner)), factor_(factor) {}
  std::vector<Vector> embed(std::span<const std::string> texts) const override;

 private:
  std::shared_ptr<const Embedder> inner_;
  double factor_;
};

// Default mock provider set used by the CLI's "mock" provider mode.
AugmentProviders default_providers();

}  // namespace claimcheck::mock
