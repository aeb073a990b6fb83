#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "corpusmix/manifest.hpp"

namespace corpusmix {

inline constexpr int kSpecialVocabSize = 32;

// Global token-ID geometry of the concatenated tokenizer: ids [0, 32) hold
// the special tokens (control tokens, then one token per language, then
// explicit <|reserved_k|> placeholders), followed by one block of
// per_lang_vocab subword ids per language in declaration order. Keeping the
// special block first leaves control ids stable when languages are added.
struct TokenLayout {
    std::vector<std::string> special_vocab;  // exactly kSpecialVocabSize names
    std::vector<std::string> languages;
    int per_lang_vocab = 1024;

    static TokenLayout make(std::vector<std::string> languages, int per_lang_vocab = 1024);

    int total_vocab() const {
        return kSpecialVocabSize + static_cast<int>(languages.size()) * per_lang_vocab;
    }
    std::optional<int> find_special(std::string_view name) const;
    int special_id(std::string_view name) const;  // throws ConfigError when unknown
    int lang_index(std::string_view code) const;  // throws ConfigError when unknown

    // Serialized description from which an external decoder can rebuild the
    // exact same ID space.
    nlohmann::ordered_json to_json() const;
    static TokenLayout from_json(const nlohmann::json& j);

    bool operator==(const TokenLayout&) const = default;
};

// Control-token names.
inline constexpr std::string_view kStartOfTranscript = "<|startoftranscript|>";
inline constexpr std::string_view kEndOfTranscript = "<|endoftranscript|>";
inline constexpr std::string_view kTranscribe = "<|transcribe|>";
inline constexpr std::string_view kTranslate = "<|translate|>";
inline constexpr std::string_view kNoSpeech = "<|nospeech|>";
inline constexpr std::string_view kPnc = "<|pnc|>";
inline constexpr std::string_view kNoPnc = "<|nopnc|>";

inline std::string language_token(std::string_view code) {
    return "<|" + std::string(code) + "|>";
}

struct PromptSpec {
    Task task = Task::transcribe;
    std::string source_lang;
    std::string target_lang;
    bool pnc = false;
};

struct PromptSequence {
    std::vector<std::string> tokens;

    bool operator==(const PromptSequence&) const = default;
};

// Builds the 5-token control sequence: start token, source language, task
// token, target language, PnC toggle. The source language precedes the task
// token and the target language follows it; for transcription the target
// language equals the source.
PromptSequence build_prompt(const PromptSpec& spec, const TokenLayout& layout);

std::vector<int> prompt_token_ids(const PromptSequence& prompt, const TokenLayout& layout);

// Reference output for non-speech audio.
PromptSequence non_speech_reference();

enum class TokenKind { special, subword };

struct ResolvedToken {
    TokenKind kind = TokenKind::special;
    std::optional<int> lang_index;  // subword only
    int local_id = 0;

    bool operator==(const ResolvedToken&) const = default;
};

// special -> local_id; subword -> 32 + lang_index * per_lang_vocab + local_id.
int global_token_id(TokenKind kind, int lang_index, int local_id, const TokenLayout& layout);

// Exact inverse of global_token_id over [0, layout.total_vocab()).
ResolvedToken resolve_token(int global_id, const TokenLayout& layout);

// Subword segmentation is injected behind this interface; training real
// subword models is out of scope here.
class Tokenizer {
public:
    virtual ~Tokenizer() = default;
    // Local ids in [0, per_lang_vocab).
    virtual std::vector<int> tokenize(std::string_view text) const = 0;
    virtual std::string detokenize(std::span<const int> local_ids) const = 0;
};

// Reference tokenizer for tests: whitespace-delimited words looked up in a
// small vocabulary, unknown words spelled out as raw bytes. Local id map:
// 1 = word separator, [2, 258) = byte fallback, 258+ = vocabulary words.
// Round-trips any single-space-separated UTF-8 text.
class ByteFallbackTokenizer final : public Tokenizer {
public:
    explicit ByteFallbackTokenizer(std::vector<std::string> vocab = {}, int per_lang_vocab = 1024);

    std::vector<int> tokenize(std::string_view text) const override;
    std::string detokenize(std::span<const int> local_ids) const override;

    static constexpr int kSeparatorId = 1;
    static constexpr int kByteBase = 2;
    static constexpr int kWordBase = kByteBase + 256;

private:
    std::vector<std::string> vocab_;
    std::map<std::string, int, std::less<>> word_to_id_;
};

}  // namespace corpusmix
