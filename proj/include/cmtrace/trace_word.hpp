#pragma once

#include <string>
#include <utility>

namespace cmtrace {

/// A cyclic word over the alphabet {X, Y}: the symbol inside one trace
/// factor. Stored in its canonical rotation, the lexicographically minimal
/// one under X < Y, so equality of traces is string equality.
class TraceWord {
 public:
  TraceWord() = default;
  /// Canonicalizes on construction. Letters must be 'X' or 'Y'.
  explicit TraceWord(std::string letters);

  const std::string& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  int degree() const { return static_cast<int>(letters_.size()); }
  std::pair<int, int> double_degree() const;  // (#X, #Y)
  int weight() const;                         // #X - #Y

  /// True iff the word has shape X^i Y^j.
  bool is_sorted() const;

  /// Order: by length, then lexicographic. Used for the canonical term order
  /// of products and for byte-stable printing.
  bool operator<(const TraceWord& o) const;
  bool operator==(const TraceWord& o) const { return letters_ == o.letters_; }
  bool operator!=(const TraceWord& o) const { return !(*this == o); }

  /// "X^2*Y" style rendering of the letter runs.
  std::string str() const;

 private:
  std::string letters_;
};

/// Lexicographically minimal rotation (idempotent).
std::string canonical_rotation(const std::string& letters);

inline TraceWord word_xy(int i, int j) {
  return TraceWord(std::string(i, 'X') + std::string(j, 'Y'));
}

}  // namespace cmtrace
