#ifndef CLONELAB_IO_HPP
#define CLONELAB_IO_HPP

#include <filesystem>
#include <string>

#include "clonelab/core.hpp"

namespace clonelab {

struct ParseError : Error {
  ParseError(const std::string& msg, int line, int column);
  int line;
  int column;
};

/// Parses either format:
///   endofunction: line 1 = n, line 2 = n values
///   operation:    line 1 = "n m", line 2 = n^m values (fixed index order)
/// A one-integer header selects the endofunction reading (m = 1).
FnTable parse_fn_text(const std::string& text);

/// "n\nvalues\n" — requires a unary table.
std::string format_endofunction(const FnTable& f);

/// "n m\nvalues\n" for any arity.
std::string format_operation(const FnTable& f);

FnTable read_fn_file(const std::filesystem::path& path);

/// Unary tables are written in the endofunction format, others in the
/// operation format.
void write_fn_file(const std::filesystem::path& path, const FnTable& f);

/// Write-temp-then-rename.
void atomic_write_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace clonelab

#endif
