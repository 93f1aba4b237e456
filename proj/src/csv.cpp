#include "vaxsent/csv.hpp"

#include <fstream>
#include <iterator>
#include <sstream>

#include "vaxsent/error.hpp"

namespace vaxsent::csv {

Reader::Reader(std::istream& in) : in_(in) {}

std::optional<Row> Reader::next() {
  while (true) {
    if (in_.peek() == std::char_traits<char>::eof()) return std::nullopt;

    Row row;
    row.line = line_;
    std::string field;
    bool quoted = false;
    bool any = false;
    while (true) {
      int c = in_.get();
      if (c == std::char_traits<char>::eof()) {
        if (quoted) {
          throw FormatError("unterminated quoted field starting on line " +
                            std::to_string(row.line));
        }
        break;
      }
      any = true;
      if (quoted) {
        if (c == '"') {
          if (in_.peek() == '"') {
            in_.get();
            field.push_back('"');
          } else {
            quoted = false;
          }
        } else {
          if (c == '\n') ++line_;
          field.push_back(static_cast<char>(c));
        }
        continue;
      }
      if (c == '"' && field.empty()) {
        quoted = true;
      } else if (c == ',') {
        row.fields.push_back(std::move(field));
        field.clear();
      } else if (c == '\r' && in_.peek() == '\n') {
        // CRLF; the '\n' ends the record next iteration
      } else if (c == '\n') {
        ++line_;
        break;
      } else {
        field.push_back(static_cast<char>(c));
      }
    }
    row.fields.push_back(std::move(field));
    if (!any || (row.fields.size() == 1 && row.fields[0].empty())) continue;
    return row;
  }
}

std::vector<Row> read_file(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open " + path.string());
  std::string content{std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>()};
  if (file.bad()) throw IoError("read error in " + path.string());
  if (content.starts_with("\xEF\xBB\xBF")) content.erase(0, 3);
  std::istringstream in(content);
  Reader reader(in);
  std::vector<Row> rows;
  while (auto row = reader.next()) rows.push_back(std::move(*row));
  return rows;
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void write_row(std::ostream& out, std::span<const std::string> fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << escape(fields[i]);
  }
  out << '\n';
}

}  // namespace vaxsent::csv
