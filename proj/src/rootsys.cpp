#include "biclosed/rootsys.hpp"

#include <cctype>
#include <charconv>

namespace biclosed {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

int parse_int(std::string_view s, const std::string& context) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw SpecError("malformed number in system spec '" + context + "'");
  return value;
}

Family parse_family(char c, const std::string& context) {
  switch (c) {
    case 'A': return Family::A;
    case 'B': return Family::B;
    case 'C': return Family::C;
    case 'D': return Family::D;
    case 'E': return Family::E;
    case 'F': return Family::F;
    case 'G': return Family::G;
    case 'H': return Family::H;
    default: throw SpecError("unknown family in system spec '" + context + "'");
  }
}

}  // namespace

char family_letter(Family f) { return "ABCDEFGH"[static_cast<int>(f)]; }

SystemSpec SystemSpec::parse(std::string_view text) {
  const std::string context(trim(text));
  std::string_view body = trim(text);
  SystemSpec spec;
  if (body.rfind("aff:", 0) == 0) {
    spec.variant = Variant::untwisted_affine;
    body.remove_prefix(4);
  } else if (body.rfind("tw:", 0) == 0) {
    spec.variant = Variant::twisted_d3_2;
    body.remove_prefix(3);
  }
  const auto at = body.find('@');
  if (at != std::string_view::npos) {
    spec.level = parse_int(body.substr(at + 1), context);
    body = body.substr(0, at);
  }
  if (spec.variant == Variant::twisted_d3_2) {
    if (body != "D3-2") throw SpecError("the only twisted system is tw:D3-2, got '" + context + "'");
    spec.family = Family::D;
    spec.rank = 3;
  } else {
    if (body.size() < 2) throw SpecError("malformed system spec '" + context + "'");
    spec.family = parse_family(body.front(), context);
    spec.rank = parse_int(body.substr(1), context);
  }
  spec.validate();
  return spec;
}

std::string SystemSpec::to_string() const {
  std::string out;
  if (variant == Variant::twisted_d3_2) {
    out = "tw:D3-2";
  } else {
    if (variant == Variant::untwisted_affine) out = "aff:";
    out += family_letter(family);
    out += std::to_string(rank);
  }
  if (level) out += "@" + std::to_string(*level);
  return out;
}

void SystemSpec::validate() const {
  const std::string name = to_string();
  if (variant == Variant::finite && level) throw SpecError("a truncation level is only meaningful for affine systems: " + name);
  if (variant != Variant::finite) {
    if (!level) throw SpecError("affine systems need a truncation level (@K): " + name);
    if (*level < 0) throw SpecError("truncation level must be nonnegative: " + name);
  }
  if (variant == Variant::twisted_d3_2) {
    if (family != Family::D || rank != 3) throw SpecError("twisted variant exists only as D3-2");
    return;
  }
  bool ok = false;
  switch (family) {
    case Family::A: ok = rank >= 1; break;
    case Family::B: ok = rank >= 2; break;
    case Family::C: ok = rank >= 2; break;
    case Family::D: ok = rank >= 4; break;
    case Family::E: ok = rank >= 6 && rank <= 8; break;
    case Family::F: ok = rank == 4; break;
    case Family::G: ok = rank == 2; break;
    case Family::H: ok = (rank == 3 || rank == 4) && variant == Variant::finite; break;
  }
  if (!ok) throw SpecError("not a legal Dynkin type: " + name);
}

}  // namespace biclosed
