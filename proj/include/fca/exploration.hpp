#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fca/context.hpp"
#include "fca/error.hpp"
#include "fca/implications.hpp"
#include "fca/next_closure.hpp"

namespace fca {

enum class SessionStatus { kRunning, kFinished };

inline std::string_view to_string(SessionStatus s) { return s == SessionStatus::kRunning ? "running" : "finished"; }

/// Attribute exploration: the session asks P -> P'' (closure taken in the
/// examples seen so far) for each lectically next set P that is closed under
/// the accepted implications, until the cursor runs past M.
class ExplorationSession {
 public:
  ExplorationSession(std::vector<std::string> universe, const std::optional<Context>& seed = std::nullopt)
      : examples_({}, universe), accepted_(universe.size()), cursor_(universe.size()) {
    if (universe.empty()) throw Error(ErrorCode::kUniverseMismatch, "universe must not be empty");
    if (seed) {
      if (seed->attributes() != universe)
        throw Error(ErrorCode::kUniverseMismatch, "seed context attributes differ from the universe");
      examples_ = *seed;
    }
    advance();
  }

  const std::vector<std::string>& universe() const { return examples_.attributes(); }
  const Context& examples() const { return examples_; }
  const ImplicationSet& accepted() const { return accepted_; }
  const std::optional<Implication>& pending() const { return pending_; }
  const AttributeSet& cursor() const { return cursor_; }
  SessionStatus status() const { return pending_ ? SessionStatus::kRunning : SessionStatus::kFinished; }
  bool finished() const { return !pending_; }

  void accept() {
    require_running();
    accepted_.add(*pending_);
    pending_.reset();
    step();
    advance();
  }

  /// Adds a counterexample that has exactly `intent`. Nothing changes when
  /// validation fails.
  void reject(const std::string& object, const AttributeSet& intent) {
    require_running();
    if (intent.size() != universe().size())
      throw Error(ErrorCode::kUniverseMismatch, "counterexample width differs from the universe");
    for (const auto& imp : accepted_) {
      if (!respects(intent, imp))
        throw Error(ErrorCode::kViolatesAccepted, "'" + object + "' violates accepted implication " + describe(imp));
    }
    if (!pending_->premise.is_subset_of(intent) || pending_->conclusion.is_subset_of(intent))
      throw Error(ErrorCode::kDoesNotRefute, "'" + object + "' does not refute " + describe(*pending_));
    if (examples_.find_object(object))
      throw Error(ErrorCode::kDuplicateObject, "object '" + object + "' already exists");
    examples_.add_object(object, intent);
    pending_.reset();
    advance();
  }

  std::string describe(const Implication& imp) const {
    auto join = [&](const AttributeSet& s) {
      std::string out = "{";
      bool first = true;
      s.for_each([&](std::size_t m) {
        if (!first) out += ",";
        out += universe()[m];
        first = false;
      });
      return out + "}";
    };
    return join(imp.premise) + " -> " + join(imp.added());
  }

 private:
  void require_running() const {
    if (!pending_) throw Error(ErrorCode::kSessionFinished, "session is finished");
  }

  void step() {
    auto next = next_closure(cursor_, [&](const AttributeSet& x) { return strict_closure(x, accepted_); });
    if (next) {
      cursor_ = std::move(*next);
    } else {
      done_ = true;
    }
  }

  void advance() {
    while (!done_) {
      auto closed = examples_.close(cursor_);
      if (closed != cursor_) {
        pending_ = Implication{cursor_, std::move(closed)};
        return;
      }
      step();
    }
  }

  Context examples_;
  ImplicationSet accepted_;
  AttributeSet cursor_;
  std::optional<Implication> pending_;
  bool done_ = false;
};

}  // namespace fca
