#include "calderon/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace calderon {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, std::string_view separators) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const auto next = s.find_first_of(separators, pos);
    const auto piece = trim(s.substr(pos, next == std::string_view::npos ? s.npos : next - pos));
    if (!piece.empty()) out.push_back(piece);
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

}  // namespace

ConfigEntries parse_config(std::string_view text, std::string_view origin) {
  ConfigEntries out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const auto key = eq == std::string_view::npos ? std::string_view{} : trim(line.substr(0, eq));
    if (key.empty()) {
      throw InvalidInput(std::string(origin) + ":" + std::to_string(line_no) +
                         ": expected 'key = value', got '" + std::string(line) + "'");
    }
    out.emplace_back(std::string(key), std::string(trim(line.substr(eq + 1))));
  }
  return out;
}

ConfigEntries read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), path);
}

double parse_real(std::string_view text, std::string_view what) {
  text = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw InvalidInput(std::string(what) + ": '" + std::string(text) + "' is not a number");
  }
  return value;
}

Complex parse_complex(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw InvalidInput("empty complex number");
  if (const auto comma = text.find(','); comma != std::string_view::npos) {
    return {parse_real(text.substr(0, comma), "real part"),
            parse_real(text.substr(comma + 1), "imaginary part")};
  }
  const char last = text.back();
  if (last != 'i' && last != 'j') return {parse_real(text, "complex number"), 0.0};
  std::string_view body = text.substr(0, text.size() - 1);
  // The split point is the last sign that is not part of an exponent.
  std::size_t split_at = std::string_view::npos;
  for (std::size_t p = body.size(); p-- > 1;) {
    if ((body[p] == '+' || body[p] == '-') && body[p - 1] != 'e' && body[p - 1] != 'E') {
      split_at = p;
      break;
    }
  }
  auto imag_of = [](std::string_view s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_real(s.front() == '+' ? s.substr(1) : s, "imaginary part");
  };
  if (split_at == std::string_view::npos) return {0.0, imag_of(body)};
  return {parse_real(body.substr(0, split_at), "real part"), imag_of(body.substr(split_at))};
}

std::vector<std::size_t> parse_ladder(std::string_view text) {
  std::vector<std::size_t> out;
  for (auto piece : split(text, ", \t")) {
    std::size_t n = 0;
    const auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), n);
    if (ec != std::errc() || ptr != piece.data() + piece.size()) {
      throw InvalidInput("N ladder: '" + std::string(piece) + "' is not a positive integer");
    }
    out.push_back(n);
  }
  if (out.empty()) throw InvalidInput("N ladder is empty");
  return out;
}

Vec2 parse_point(std::string_view text) {
  const auto parts = split(text, ", \t");
  if (parts.size() != 2) throw InvalidInput("point '" + std::string(text) + "' needs two coordinates");
  return {parse_real(parts[0], "x"), parse_real(parts[1], "y")};
}

std::vector<Vec2> parse_points(std::string_view text) {
  std::vector<Vec2> out;
  for (auto piece : split(text, ";")) out.push_back(parse_point(piece));
  if (out.empty()) throw InvalidInput("no points given");
  return out;
}

}  // namespace calderon
