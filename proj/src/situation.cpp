#include "imprand/situation.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "imprand/common.hpp"

namespace imprand {

Situation::Situation(std::string bits) : bits_(std::move(bits)) {
  for (char c : bits_)
    if (c != '0' && c != '1') fail(ErrorKind::parse, "situation contains a symbol other than 0/1");
}

Situation Situation::from_index(std::uint64_t index, std::size_t length) {
  std::string bits(length, '0');
  for (std::size_t b = 0; b < length; ++b)
    if ((index >> (length - 1 - b)) & 1U) bits[b] = '1';
  return Situation(std::move(bits), Trusted{});
}

PathPrefix parse_path_text(std::string_view text) {
  std::string bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c == '0' || c == '1') {
      bits.push_back(c);
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      fail(ErrorKind::parse, std::string("path text contains invalid symbol '") + c + "'");
    }
  }
  return Situation(std::move(bits));
}

PathPrefix read_path_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) fail(ErrorKind::parse, "cannot read path file " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_path_text(ss.str());
}

std::string format_path_text(const PathPrefix& path) {
  const std::string& bits = path.bits();
  std::string out;
  out.reserve(bits.size() + bits.size() / 64 + 1);
  for (std::size_t i = 0; i < bits.size(); i += 64) {
    out.append(bits, i, 64);
    out.push_back('\n');
  }
  return out;
}

void write_path_file(const std::filesystem::path& file, const PathPrefix& path) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::parse, "cannot write path file " + file.string());
  out << format_path_text(path);
}

}  // namespace imprand
