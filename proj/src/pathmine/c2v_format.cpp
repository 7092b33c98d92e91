#include "c2v/pathmine/c2v_format.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "c2v/pathmine/vocab.hpp"
#include "c2v/util/error.hpp"

namespace c2v::pathmine {

void write_c2v(std::ostream& out, const std::vector<BagOfContexts>& bags) {
  out << kFormatHeader << '\n';
  for (const auto& bag : bags) {
    out << label_token(bag.label);
    for (const auto& ctx : bag.contexts) {
      out << ' ' << ctx.start_value << ',' << ctx.path_hash << ',' << ctx.end_value;
    }
    out << '\n';
  }
}

void write_c2v_file(const std::filesystem::path& file,
                    const std::vector<BagOfContexts>& bags) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + file.string());
  write_c2v(out, bags);
  if (!out) throw Error(ErrorKind::Io, "write failed for " + file.string());
}

namespace {

bool is_hash(std::string_view s) {
  if (s.size() != 32) return false;
  for (char c : s) {
    if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) return false;
  }
  return true;
}

}  // namespace

std::vector<BagOfContexts> read_c2v(std::istream& in) {
  std::vector<BagOfContexts> bags;
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) {
    return Error(ErrorKind::Format, "c2v line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1) {
      if (line != kFormatHeader) throw fail("missing '#c2v-format 1' header");
      continue;
    }
    if (line.empty()) continue;

    std::string_view rest(line);
    auto space = rest.find(' ');
    auto label = parse_label_token(rest.substr(0, space));
    if (!label) throw fail("unknown label '" + std::string(rest.substr(0, space)) + "'");

    BagOfContexts bag;
    bag.sample_id = static_cast<std::int64_t>(bags.size());
    bag.label = *label;
    while (space != std::string_view::npos) {
      rest = rest.substr(space + 1);
      space = rest.find(' ');
      std::string_view field = rest.substr(0, space);
      if (field.empty()) throw fail("empty context");
      auto c1 = field.find(',');
      auto c2 = c1 == std::string_view::npos ? c1 : field.find(',', c1 + 1);
      if (c2 == std::string_view::npos || field.find(',', c2 + 1) != std::string_view::npos) {
        throw fail("context '" + std::string(field) + "' is not start,path,end");
      }
      PathContext ctx{std::string(field.substr(0, c1)),
                      std::string(field.substr(c1 + 1, c2 - c1 - 1)),
                      std::string(field.substr(c2 + 1))};
      if (ctx.start_value.empty() || ctx.end_value.empty()) throw fail("empty value");
      if (!is_hash(ctx.path_hash)) throw fail("path '" + ctx.path_hash + "' is not an MD5 hex digest");
      bag.contexts.push_back(std::move(ctx));
    }
    if (bag.contexts.empty()) throw fail("bag has no contexts");
    bags.push_back(std::move(bag));
  }
  if (line_no == 0) throw Error(ErrorKind::Format, "c2v input is empty (no header)");
  return bags;
}

std::vector<BagOfContexts> read_c2v_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + file.string());
  return read_c2v(in);
}

}  // namespace c2v::pathmine
