#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace imprand {

/// Non-owning view of a situation: a finite string over '0'/'1'. Prefixes of
/// a stored path are views into the same buffer, so walking a path is O(1)
/// per step.
class SituationView {
 public:
  constexpr SituationView() = default;
  constexpr explicit SituationView(std::string_view bits) : bits_(bits) {}

  std::size_t length() const { return bits_.size(); }
  bool is_root() const { return bits_.empty(); }
  int at(std::size_t i) const { return bits_[i] == '1' ? 1 : 0; }
  int last() const { return at(bits_.size() - 1); }
  SituationView prefix(std::size_t n) const { return SituationView(bits_.substr(0, n)); }
  std::string_view bits() const { return bits_; }

  friend bool operator==(SituationView a, SituationView b) { return a.bits_ == b.bits_; }

 private:
  std::string_view bits_;
};

/// Owning situation, also used for observed path prefixes.
class Situation {
 public:
  Situation() = default;
  /// Throws parse error on any character other than '0' or '1'.
  explicit Situation(std::string bits);

  /// Situation at `length` whose bits are the binary digits of `index`, most
  /// significant first.
  static Situation from_index(std::uint64_t index, std::size_t length);

  std::size_t length() const { return bits_.size(); }
  int at(std::size_t i) const { return bits_[i] == '1' ? 1 : 0; }
  const std::string& bits() const { return bits_; }
  SituationView view() const { return SituationView(bits_); }
  operator SituationView() const { return view(); }  // NOLINT(google-explicit-constructor)
  SituationView prefix(std::size_t n) const { return view().prefix(n); }

  Situation child(int x) const { return Situation(bits_ + (x ? '1' : '0'), Trusted{}); }
  void push_back(int x) { bits_.push_back(x ? '1' : '0'); }

  friend auto operator<=>(const Situation&, const Situation&) = default;

 private:
  struct Trusted {};
  Situation(std::string bits, Trusted) : bits_(std::move(bits)) {}
  std::string bits_;
};

using PathPrefix = Situation;

/// Calls fn(SituationView) for every situation of the given length, in
/// lexicographic order.
template <class Fn>
void for_each_situation(std::size_t length, Fn&& fn) {
  std::string buf(length, '0');
  const std::uint64_t count = std::uint64_t{1} << length;
  for (std::uint64_t i = 0; i < count; ++i) {
    for (std::size_t b = 0; b < length; ++b) buf[b] = ((i >> (length - 1 - b)) & 1U) ? '1' : '0';
    fn(SituationView(buf));
  }
}

/// Parses ASCII '0'/'1' text, ignoring whitespace.
PathPrefix parse_path_text(std::string_view text);
PathPrefix read_path_file(const std::filesystem::path& file);
/// 64 symbols per line, newline-terminated.
std::string format_path_text(const PathPrefix& path);
void write_path_file(const std::filesystem::path& file, const PathPrefix& path);

}  // namespace imprand
