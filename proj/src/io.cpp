#include "clonelab/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace clonelab {

ParseError::ParseError(const std::string& msg, int line_, int column_)
    : Error(msg + " (line " + std::to_string(line_) + ", column " + std::to_string(column_) + ")"),
      line(line_),
      column(column_) {}

namespace {

struct Token {
  long value;
  int line;
  int column;
};

// Integer tokens with positions; anything non-numeric is a parse error.
std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> tokens;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++col;
      ++i;
      continue;
    }
    int start_col = col;
    std::size_t j = i;
    if (text[j] == '-' || text[j] == '+') ++j;
    std::size_t digits = j;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    if (j == digits) {
      throw ParseError(std::string("unexpected character '") + c + "'", line, start_col);
    }
    long v = std::stol(text.substr(i, j - i));
    tokens.push_back({v, line, start_col});
    col += static_cast<int>(j - i);
    i = j;
  }
  return tokens;
}

int token_as_int(const Token& t, const char* what, long lo, long hi) {
  if (t.value < lo || t.value > hi) {
    throw ParseError(std::string(what) + " " + std::to_string(t.value) + " out of range [" +
                     std::to_string(lo) + ", " + std::to_string(hi) + "]",
                     t.line, t.column);
  }
  return static_cast<int>(t.value);
}

}  // namespace

FnTable parse_fn_text(const std::string& text) {
  std::vector<Token> tokens = tokenize(text);
  if (tokens.empty()) throw ParseError("empty input", 1, 1);
  int header_line = tokens.front().line;
  std::size_t header_count = 0;
  while (header_count < tokens.size() && tokens[header_count].line == header_line) ++header_count;
  if (header_count != 1 && header_count != 2) {
    throw ParseError("header must be 'n' or 'n m', found " + std::to_string(header_count) +
                         " integers",
                     tokens[0].line, tokens[0].column);
  }
  int n = token_as_int(tokens[0], "universe size", 1, kMaxUniverse);
  int m = header_count == 2 ? token_as_int(tokens[1], "arity", 1, 16) : 1;
  std::size_t expect = checked_table_size(n, m);
  std::size_t have = tokens.size() - header_count;
  if (have < expect) {
    const Token& last = tokens.back();
    throw ParseError("expected " + std::to_string(expect) + " table entries, found " +
                         std::to_string(have),
                     last.line, last.column);
  }
  if (have > expect) {
    const Token& extra = tokens[header_count + expect];
    throw ParseError("trailing data after " + std::to_string(expect) + " table entries",
                     extra.line, extra.column);
  }
  std::vector<int> vals;
  vals.reserve(expect);
  for (std::size_t i = 0; i < expect; ++i) {
    vals.push_back(token_as_int(tokens[header_count + i], "table entry", 0, n - 1));
  }
  return FnTable(n, m, std::move(vals));
}

namespace {
std::string join_values(const FnTable& f) {
  std::ostringstream out;
  const auto& vals = f.values();
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (i) out << ' ';
    out << vals[i];
  }
  return out.str();
}
}  // namespace

std::string format_endofunction(const FnTable& f) {
  if (!f.is_unary()) throw InvalidInput("endofunction format requires a unary table");
  return std::to_string(f.universe()) + "\n" + join_values(f) + "\n";
}

std::string format_operation(const FnTable& f) {
  return std::to_string(f.universe()) + " " + std::to_string(f.arity()) + "\n" + join_values(f) +
         "\n";
}

FnTable read_fn_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_fn_text(buf.str());
}

void write_fn_file(const std::filesystem::path& path, const FnTable& f) {
  atomic_write_file(path, f.is_unary() ? format_endofunction(f) : format_operation(f));
}

void atomic_write_file(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw InvalidInput("cannot write file: " + tmp.string());
    out << contents;
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace clonelab
