#include "corpusmix/prompts.hpp"

#include <algorithm>

#include "corpusmix/error.hpp"

namespace corpusmix {

TokenLayout TokenLayout::make(std::vector<std::string> languages, int per_lang_vocab) {
    if (per_lang_vocab <= 0)
        throw ConfigError("per-language vocabulary size must be positive");
    if (languages.empty())
        throw ConfigError("token layout needs at least one language");
    constexpr int named = 7;
    if (static_cast<int>(languages.size()) > kSpecialVocabSize - named)
        throw ConfigError("too many languages for the special-token block: " +
                          std::to_string(languages.size()) + " > " +
                          std::to_string(kSpecialVocabSize - named));
    for (const auto& code : languages) {
        if (code.empty()) throw ConfigError("empty language code");
        if (std::count(languages.begin(), languages.end(), code) != 1)
            throw ConfigError("duplicate language code: " + code);
    }

    TokenLayout layout;
    layout.languages = std::move(languages);
    layout.per_lang_vocab = per_lang_vocab;
    layout.special_vocab = {
        std::string(kStartOfTranscript), std::string(kEndOfTranscript),
        std::string(kTranscribe),        std::string(kTranslate),
        std::string(kNoSpeech),          std::string(kPnc),
        std::string(kNoPnc),
    };
    for (const auto& code : layout.languages)
        layout.special_vocab.push_back(language_token(code));
    int k = 0;
    while (static_cast<int>(layout.special_vocab.size()) < kSpecialVocabSize)
        layout.special_vocab.push_back("<|reserved_" + std::to_string(k++) + "|>");
    return layout;
}

std::optional<int> TokenLayout::find_special(std::string_view name) const {
    auto it = std::find(special_vocab.begin(), special_vocab.end(), name);
    if (it == special_vocab.end()) return std::nullopt;
    return static_cast<int>(it - special_vocab.begin());
}

int TokenLayout::special_id(std::string_view name) const {
    auto id = find_special(name);
    if (!id) throw ConfigError("unknown special token: " + std::string(name));
    return *id;
}

int TokenLayout::lang_index(std::string_view code) const {
    auto it = std::find(languages.begin(), languages.end(), code);
    if (it == languages.end())
        throw ConfigError("unknown language: " + std::string(code));
    return static_cast<int>(it - languages.begin());
}

nlohmann::ordered_json TokenLayout::to_json() const {
    nlohmann::ordered_json j;
    j["special_vocab"] = special_vocab;
    j["languages"] = languages;
    j["per_lang_vocab"] = per_lang_vocab;
    return j;
}

TokenLayout TokenLayout::from_json(const nlohmann::json& j) {
    TokenLayout layout;
    layout.special_vocab = j.at("special_vocab").get<std::vector<std::string>>();
    layout.languages = j.at("languages").get<std::vector<std::string>>();
    layout.per_lang_vocab = j.at("per_lang_vocab").get<int>();
    if (static_cast<int>(layout.special_vocab.size()) != kSpecialVocabSize)
        throw DataError("special vocabulary must hold exactly " +
                        std::to_string(kSpecialVocabSize) + " tokens, got " +
                        std::to_string(layout.special_vocab.size()));
    if (layout.per_lang_vocab <= 0)
        throw DataError("per-language vocabulary size must be positive");
    for (const auto& code : layout.languages)
        if (!layout.find_special(language_token(code)))
            throw DataError("language " + code + " missing from special vocabulary");
    return layout;
}

PromptSequence build_prompt(const PromptSpec& spec, const TokenLayout& layout) {
    if (spec.source_lang.empty()) throw ConfigError("prompt needs a source language");
    const std::string& target =
        spec.task == Task::transcribe
            ? spec.source_lang
            : (spec.target_lang.empty() ? spec.source_lang : spec.target_lang);
    if (spec.task == Task::transcribe && !spec.target_lang.empty() &&
        spec.target_lang != spec.source_lang)
        throw ConfigError("transcription target language must match the source");

    PromptSequence prompt;
    prompt.tokens.reserve(5);
    prompt.tokens.emplace_back(kStartOfTranscript);
    prompt.tokens.push_back(language_token(spec.source_lang));
    prompt.tokens.emplace_back(spec.task == Task::transcribe ? kTranscribe : kTranslate);
    prompt.tokens.push_back(language_token(target));
    prompt.tokens.emplace_back(spec.pnc ? kPnc : kNoPnc);

    for (const auto& tok : prompt.tokens) layout.special_id(tok);  // validate
    return prompt;
}

std::vector<int> prompt_token_ids(const PromptSequence& prompt, const TokenLayout& layout) {
    std::vector<int> ids;
    ids.reserve(prompt.tokens.size());
    for (const auto& tok : prompt.tokens) ids.push_back(layout.special_id(tok));
    return ids;
}

PromptSequence non_speech_reference() {
    PromptSequence prompt;
    prompt.tokens.emplace_back(kNoSpeech);
    prompt.tokens.emplace_back(kEndOfTranscript);
    return prompt;
}

int global_token_id(TokenKind kind, int lang_index, int local_id, const TokenLayout& layout) {
    if (kind == TokenKind::special) {
        if (local_id < 0 || local_id >= kSpecialVocabSize)
            throw ConfigError("special token id out of range: " + std::to_string(local_id));
        return local_id;
    }
    if (lang_index < 0 || lang_index >= static_cast<int>(layout.languages.size()))
        throw ConfigError("language index out of range: " + std::to_string(lang_index));
    if (local_id < 0 || local_id >= layout.per_lang_vocab)
        throw ConfigError("subword id out of range: " + std::to_string(local_id));
    return kSpecialVocabSize + lang_index * layout.per_lang_vocab + local_id;
}

ResolvedToken resolve_token(int global_id, const TokenLayout& layout) {
    if (global_id < 0 || global_id >= layout.total_vocab())
        throw ConfigError("token id out of range: " + std::to_string(global_id));
    ResolvedToken tok;
    if (global_id < kSpecialVocabSize) {
        tok.kind = TokenKind::special;
        tok.local_id = global_id;
        return tok;
    }
    int offset = global_id - kSpecialVocabSize;
    tok.kind = TokenKind::subword;
    tok.lang_index = offset / layout.per_lang_vocab;
    tok.local_id = offset % layout.per_lang_vocab;
    return tok;
}

ByteFallbackTokenizer::ByteFallbackTokenizer(std::vector<std::string> vocab, int per_lang_vocab)
    : vocab_(std::move(vocab)) {
    if (kWordBase + static_cast<int>(vocab_.size()) > per_lang_vocab)
        throw ConfigError("vocabulary does not fit the per-language block");
    for (int i = 0; i < static_cast<int>(vocab_.size()); ++i) {
        if (vocab_[i].empty() || vocab_[i].find(' ') != std::string::npos)
            throw ConfigError("vocabulary words must be non-empty and space-free");
        if (!word_to_id_.emplace(vocab_[i], kWordBase + i).second)
            throw ConfigError("duplicate vocabulary word: " + vocab_[i]);
    }
}

std::vector<int> ByteFallbackTokenizer::tokenize(std::string_view text) const {
    std::vector<int> ids;
    size_t pos = 0;
    bool first = true;
    while (pos <= text.size()) {
        size_t space = text.find(' ', pos);
        std::string_view word = text.substr(pos, space == std::string_view::npos
                                                     ? std::string_view::npos
                                                     : space - pos);
        if (!first) ids.push_back(kSeparatorId);
        first = false;
        if (auto it = word_to_id_.find(word); it != word_to_id_.end()) {
            ids.push_back(it->second);
        } else {
            for (unsigned char b : word) ids.push_back(kByteBase + b);
        }
        if (space == std::string_view::npos) break;
        pos = space + 1;
    }
    return ids;
}

std::string ByteFallbackTokenizer::detokenize(std::span<const int> local_ids) const {
    std::string text;
    for (int id : local_ids) {
        if (id == kSeparatorId) {
            text.push_back(' ');
        } else if (id >= kByteBase && id < kWordBase) {
            text.push_back(static_cast<char>(id - kByteBase));
        } else if (id >= kWordBase && id < kWordBase + static_cast<int>(vocab_.size())) {
            text += vocab_[id - kWordBase];
        } else {
            throw DataError("unknown local token id: " + std::to_string(id));
        }
    }
    return text;
}

}  // namespace corpusmix
