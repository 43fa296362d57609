#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace collatz {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int column(const std::string& name) const;  // -1 when absent
};

// Strict comma-separated values, no quoting (none of the artifact's schemas
// need it); a stray quote or an uneven row count is a schema error.
CsvTable read_csv(std::istream& in, const std::string& source_name);
CsvTable read_csv_file(const std::filesystem::path& p);
std::string to_csv(const CsvTable& t);

// Writes via a temp file in the same directory, then renames.
void write_file_atomic(const std::filesystem::path& p, const std::string& contents);

}  // namespace collatz
