#include "vdw/certify.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "vdw/ap.hpp"
#include "vdw/encoder.hpp"

namespace vdw {

Partition decode_model(const Assignment& a, const Params& p) {
  if (a.num_vars() < p.m * p.k) {
    throw MalformedModelError("assignment narrower than m*k variables");
  }
  Partition out;
  out.m = p.m;
  out.blocks.assign(static_cast<std::size_t>(p.k), {});
  for (int i = 1; i <= p.m; ++i) {
    int chosen = 0;
    for (int b = 1; b <= p.k; ++b) {
      if (a.value(var_of(i, b, p))) {
        if (chosen != 0) {
          throw MalformedModelError("element " + std::to_string(i) +
                                    " assigned to blocks " + std::to_string(chosen) +
                                    " and " + std::to_string(b));
        }
        chosen = b;
      }
    }
    if (chosen == 0) {
      throw MalformedModelError("element " + std::to_string(i) + " assigned to no block");
    }
    out.blocks[static_cast<std::size_t>(chosen) - 1].push_back(i);
  }
  return out;
}

Assignment encode_partition(const Partition& partition, const Params& p) {
  if (partition.m != p.m) {
    throw std::invalid_argument("partition is over [" + std::to_string(partition.m) +
                                "], params say m=" + std::to_string(p.m));
  }
  if (partition.num_blocks() != p.k) {
    throw std::invalid_argument("partition has " + std::to_string(partition.num_blocks()) +
                                " blocks, params say k=" + std::to_string(p.k));
  }
  Assignment a(p.m * p.k);
  for (int b = 1; b <= p.k; ++b) {
    for (int e : partition.blocks[static_cast<std::size_t>(b) - 1]) {
      if (e < 1 || e > p.m) {
        throw std::invalid_argument("element " + std::to_string(e) + " outside [m]");
      }
      a.set(var_of(e, b, p), true);
    }
  }
  return a;
}

std::string VerifyReport::summary() const {
  std::string head = valid ? "VALID" : "INVALID";
  return head + " k=" + std::to_string(params.k) + " l=" + std::to_string(params.l) +
         " m=" + std::to_string(params.m);
}

namespace {

void render_element_list(std::ostream& out, const char* label,
                         const std::vector<int>& elems) {
  if (elems.empty()) return;
  out << label << " (" << elems.size() << "):";
  std::size_t shown = std::min<std::size_t>(elems.size(), 10);
  for (std::size_t j = 0; j < shown; ++j) out << ' ' << elems[j];
  if (shown < elems.size()) out << " ...";
  out << '\n';
}

}  // namespace

void VerifyReport::render(std::ostream& out) const {
  out << summary() << '\n';
  render_element_list(out, "missing elements", missing);
  render_element_list(out, "duplicated elements", duplicated);
  render_element_list(out, "out-of-range elements", out_of_range);
  for (const auto& [block, ap] : violations) {
    out << "block " << block << " contains progression";
    for (int t = 0; t < ap.length; ++t) out << ' ' << ap.term(t);
    out << " (start " << ap.start << ", step " << ap.step << ")\n";
  }
  if (violations_truncated) out << "further violations omitted\n";
  for (const std::string& w : warnings) out << "warning: " << w << '\n';
}

VerifyReport verify(const Certificate& cert) {
  const Params& p = cert.params;
  VerifyReport report{p};

  if (cert.partition.num_blocks() != p.k) {
    report.warnings.push_back("header says k=" + std::to_string(p.k) + " but " +
                              std::to_string(cert.partition.num_blocks()) +
                              " blocks are present");
  }
  if (cert.partition.m != p.m) {
    report.warnings.push_back("header says m=" + std::to_string(p.m) +
                              " but partition is over [" +
                              std::to_string(cert.partition.m) + "]");
  }
  bool structure_ok = cert.partition.num_blocks() == p.k && cert.partition.m == p.m;

  std::vector<int> owners(static_cast<std::size_t>(p.m) + 1, 0);
  std::vector<std::vector<std::uint8_t>> member(
      cert.partition.blocks.size(),
      std::vector<std::uint8_t>(static_cast<std::size_t>(p.m) + 1, 0));
  for (std::size_t bi = 0; bi < cert.partition.blocks.size(); ++bi) {
    if (cert.partition.blocks[bi].empty()) {
      report.warnings.push_back("block " + std::to_string(bi + 1) + " is empty");
    }
    for (int e : cert.partition.blocks[bi]) {
      if (e < 1 || e > p.m) {
        report.out_of_range.push_back(e);
        continue;
      }
      if (owners[static_cast<std::size_t>(e)] != 0) {
        report.duplicated.push_back(e);
      } else {
        owners[static_cast<std::size_t>(e)] = static_cast<int>(bi) + 1;
      }
      member[bi][static_cast<std::size_t>(e)] = 1;
    }
  }
  for (int e = 1; e <= p.m; ++e) {
    if (owners[static_cast<std::size_t>(e)] == 0) report.missing.push_back(e);
  }

  int found = 0;
  for (const Progression& ap : ap_enumerate(p.m, p.l)) {
    for (std::size_t bi = 0; bi < member.size(); ++bi) {
      bool all = true;
      for (int t = 0; t < ap.length; ++t) {
        if (!member[bi][static_cast<std::size_t>(ap.term(t))]) {
          all = false;
          break;
        }
      }
      if (!all) continue;
      ++found;
      if (found <= 10) {
        report.violations.emplace_back(static_cast<int>(bi) + 1, ap);
      } else {
        report.violations_truncated = true;
      }
    }
    if (report.violations_truncated) break;
  }

  report.valid = structure_ok && report.missing.empty() && report.duplicated.empty() &&
                 report.out_of_range.empty() && report.violations.empty();
  return report;
}

Partition permute_blocks(const Partition& partition, const std::vector<int>& pi) {
  const std::size_t n = partition.blocks.size();
  if (pi.size() != n) throw std::invalid_argument("permutation size mismatch");
  std::vector<std::uint8_t> seen(n, 0);
  for (int v : pi) {
    if (v < 0 || static_cast<std::size_t>(v) >= n || seen[static_cast<std::size_t>(v)]) {
      throw std::invalid_argument("not a permutation of the block indices");
    }
    seen[static_cast<std::size_t>(v)] = 1;
  }
  Partition out;
  out.m = partition.m;
  out.blocks.resize(n);
  for (std::size_t b = 0; b < n; ++b) {
    out.blocks[static_cast<std::size_t>(pi[b])] = partition.blocks[b];
  }
  return out;
}

Partition reflect(const Partition& partition) {
  Partition out;
  out.m = partition.m;
  out.blocks.reserve(partition.blocks.size());
  for (const std::vector<int>& block : partition.blocks) {
    std::vector<int> image;
    image.reserve(block.size());
    for (int e : block) image.push_back(partition.m + 1 - e);
    std::sort(image.begin(), image.end());
    out.blocks.push_back(std::move(image));
  }
  return out;
}

namespace {

struct Line {
  std::string text;
  int number = 0;
};

bool blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isspace(c); });
}

/// Parses "key=value" after trimming; returns false if the line does
/// not start with the key.
bool header_value(const std::string& line, const char* key, long long* out_value,
                  int line_no) {
  std::size_t start = line.find_first_not_of(" \t");
  if (start == std::string::npos) return false;
  std::size_t klen = std::string(key).size();
  if (line.compare(start, klen, key) != 0) return false;
  const char* first = line.data() + start + klen;
  const char* last = line.data() + line.size();
  while (first < last && std::isspace(static_cast<unsigned char>(*first))) ++first;
  auto [ptr, ec] = std::from_chars(first, last, *out_value);
  if (ec != std::errc{}) {
    throw ParseError(std::string("bad value for ") + key, line_no);
  }
  while (ptr < last && std::isspace(static_cast<unsigned char>(*ptr))) ++ptr;
  if (ptr != last) throw ParseError(std::string("trailing text after ") + key, line_no);
  return true;
}

}  // namespace

Certificate parse_certificate(std::istream& in) {
  std::vector<std::string> origin_lines;
  long long k = -1, l = -1, m = -1;
  std::vector<std::vector<int>> blocks;
  std::vector<std::uint8_t> seen;

  std::string raw;
  int line_no = 0;
  bool headers_done = false;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (blank(raw)) continue;
    std::size_t start = raw.find_first_not_of(" \t");
    if (raw[start] == '#') {
      if (!headers_done && k < 0 && l < 0 && m < 0) {
        std::size_t text = start + 1;
        if (text < raw.size() && raw[text] == ' ') ++text;
        origin_lines.push_back(raw.substr(text));
      }
      continue;
    }
    if (!headers_done) {
      long long v;
      if (header_value(raw, "k=", &v, line_no)) {
        if (k >= 0) throw ParseError("duplicate k= header", line_no);
        k = v;
        continue;
      }
      if (header_value(raw, "l=", &v, line_no)) {
        if (l >= 0) throw ParseError("duplicate l= header", line_no);
        l = v;
        continue;
      }
      if (header_value(raw, "m=", &v, line_no)) {
        if (m >= 0) throw ParseError("duplicate m= header", line_no);
        m = v;
        continue;
      }
      if (k < 0 || l < 0 || m < 0) {
        throw ParseError("expected k=, l=, m= headers before partition data", line_no);
      }
      headers_done = true;
      seen.assign(static_cast<std::size_t>(m) + 1, 0);
    }

    std::size_t pos = start;
    if (raw.compare(pos, 5, "Block") == 0) {
      pos += 5;
      long long idx;
      const char* first = raw.data() + pos;
      const char* last = raw.data() + raw.size();
      while (first < last && std::isspace(static_cast<unsigned char>(*first))) ++first;
      auto [ptr, ec] = std::from_chars(first, last, idx);
      if (ec != std::errc{}) throw ParseError("bad block index", line_no);
      if (ptr >= last || *ptr != ':') {
        throw ParseError("expected ':' after block index", line_no,
                         static_cast<int>(ptr - raw.data()) + 1);
      }
      if (idx != static_cast<long long>(blocks.size()) + 1) {
        throw ParseError("blocks must be numbered consecutively from 1; got " +
                             std::to_string(idx),
                         line_no);
      }
      blocks.emplace_back();
      pos = static_cast<std::size_t>(ptr - raw.data()) + 1;
    } else if (blocks.empty()) {
      throw ParseError("expected a 'Block <n>:' line", line_no,
                       static_cast<int>(start) + 1);
    }

    while (pos < raw.size()) {
      while (pos < raw.size() && std::isspace(static_cast<unsigned char>(raw[pos]))) ++pos;
      if (pos >= raw.size()) break;
      long long e;
      const char* first = raw.data() + pos;
      const char* last = raw.data() + raw.size();
      auto [ptr, ec] = std::from_chars(first, last, e);
      if (ec != std::errc{} || (ptr < last && !std::isspace(static_cast<unsigned char>(*ptr)))) {
        throw ParseError("expected an element number", line_no, static_cast<int>(pos) + 1);
      }
      if (e < 1 || e > m) {
        throw RangeError("element " + std::to_string(e) + " outside [1," +
                             std::to_string(m) + "]",
                         line_no, static_cast<int>(pos) + 1);
      }
      if (seen[static_cast<std::size_t>(e)]) {
        throw DuplicateError("element " + std::to_string(e) + " listed twice", line_no,
                             static_cast<int>(pos) + 1);
      }
      seen[static_cast<std::size_t>(e)] = 1;
      blocks.back().push_back(static_cast<int>(e));
      pos = static_cast<std::size_t>(ptr - raw.data());
    }
  }

  if (k < 0 || l < 0 || m < 0) throw ParseError("missing k=/l=/m= headers", line_no);
  if (blocks.empty()) throw ParseError("no Block lines found", line_no);

  Certificate cert{Params(static_cast<int>(k), static_cast<int>(l), static_cast<int>(m)),
                   Partition{}, {}};
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  cert.partition.m = static_cast<int>(m);
  cert.partition.blocks = std::move(blocks);
  std::string origin;
  for (std::size_t j = 0; j < origin_lines.size(); ++j) {
    if (j > 0) origin += '\n';
    origin += origin_lines[j];
  }
  cert.origin = std::move(origin);
  return cert;
}

void write_certificate(const Certificate& cert, std::ostream& out) {
  if (!cert.origin.empty()) {
    std::istringstream lines(cert.origin);
    std::string line;
    while (std::getline(lines, line)) out << "# " << line << '\n';
  }
  out << "k=" << cert.params.k << '\n';
  out << "l=" << cert.params.l << '\n';
  out << "m=" << cert.params.m << '\n';
  for (std::size_t bi = 0; bi < cert.partition.blocks.size(); ++bi) {
    out << "Block " << bi + 1 << ":";
    std::size_t width = 8;
    for (int e : cert.partition.blocks[bi]) {
      std::string tok = ' ' + std::to_string(e);
      if (width + tok.size() > 76) {
        out << "\n   ";
        width = 3;
      }
      out << tok;
      width += tok.size();
    }
    out << '\n';
  }
}

}  // namespace vdw
