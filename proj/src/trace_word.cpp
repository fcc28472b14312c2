#include "cmtrace/trace_word.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace cmtrace {

std::string canonical_rotation(const std::string& s) {
  const size_t n = s.size();
  if (n <= 1) return s;
  std::string best = s;
  std::string cur = s;
  for (size_t i = 1; i < n; ++i) {
    std::rotate(cur.begin(), cur.begin() + 1, cur.end());
    if (cur < best) best = cur;
  }
  return best;
}

TraceWord::TraceWord(std::string letters) {
  for (char c : letters)
    if (c != 'X' && c != 'Y')
      throw std::invalid_argument("TraceWord: letters must be X or Y");
  letters_ = canonical_rotation(letters);
}

std::pair<int, int> TraceWord::double_degree() const {
  int x = static_cast<int>(std::count(letters_.begin(), letters_.end(), 'X'));
  return {x, degree() - x};
}

int TraceWord::weight() const {
  auto [x, y] = double_degree();
  return x - y;
}

bool TraceWord::is_sorted() const {
  return std::is_sorted(letters_.begin(), letters_.end());
}

bool TraceWord::operator<(const TraceWord& o) const {
  if (letters_.size() != o.letters_.size())
    return letters_.size() < o.letters_.size();
  return letters_ < o.letters_;
}

std::string TraceWord::str() const {
  std::ostringstream os;
  size_t i = 0;
  bool first = true;
  while (i < letters_.size()) {
    size_t j = i;
    while (j < letters_.size() && letters_[j] == letters_[i]) ++j;
    if (!first) os << "*";
    first = false;
    os << letters_[i];
    if (j - i > 1) os << "^" << (j - i);
    i = j;
  }
  return os.str();
}

}  // namespace cmtrace
