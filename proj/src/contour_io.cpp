#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <istream>
#include <iterator>
#include "json.hpp"
#include <set>
#include <sstream>

#include "shapeforge/error.hpp"
#include "shapeforge/ingest.hpp"

namespace shapeforge {

namespace {

constexpr std::string_view kCsvHeader = "contour_id,group,point_index,x,y";

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

[[noreturn]] void fail(ErrorKind kind, std::size_t line, const std::string& what) {
  throw Error(kind, "line " + std::to_string(line) + ": " + what);
}

double parse_coordinate(std::string_view token, std::size_t line, std::string_view name) {
  token = trim(token);
  double value = 0.0;
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    const std::string l = lower(token);
    if (l == "nan" || l == "-nan" || l == "inf" || l == "-inf" || l == "infinity" ||
        l == "-infinity") {
      fail(ErrorKind::validation, line, "non-finite " + std::string(name) + " coordinate");
    }
    fail(ErrorKind::parse, line, "cannot parse " + std::string(name) + " '" + std::string(token) + "'");
  }
  if (!std::isfinite(value)) {
    fail(ErrorKind::validation, line, "non-finite " + std::string(name) + " coordinate");
  }
  return value;
}

void check_point_count(const RawContour& c, std::size_t where, std::string_view unit) {
  if (c.points.size() < 3) {
    throw Error(ErrorKind::validation, std::string(unit) + " " + std::to_string(where) +
                                           ": contour '" + c.id + "' has fewer than 3 points");
  }
}

std::vector<RawContour> parse_csv(std::string_view text) {
  std::vector<RawContour> out;
  std::set<std::string> finished;
  std::size_t line_no = 0;
  std::size_t contour_start_line = 0;
  bool header_seen = false;
  long last_index = 0;

  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.remove_prefix(3);
    line = trim(line);
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != kCsvHeader) fail(ErrorKind::parse, line_no, "expected header '" + std::string(kCsvHeader) + "'");
      header_seen = true;
      continue;
    }

    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (true) {
      const std::size_t comma = line.find(',', pos);
      fields.push_back(trim(line.substr(pos, comma == std::string_view::npos ? comma : comma - pos)));
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    if (fields.size() != 5) {
      fail(ErrorKind::parse, line_no, "expected 5 fields, got " + std::to_string(fields.size()));
    }
    const std::string id(fields[0]);
    const std::string group(fields[1]);
    if (id.empty()) fail(ErrorKind::parse, line_no, "empty contour_id");

    long index = 0;
    {
      const auto [ptr, ec] = std::from_chars(fields[2].data(), fields[2].data() + fields[2].size(), index);
      if (ec != std::errc() || ptr != fields[2].data() + fields[2].size()) {
        fail(ErrorKind::parse, line_no, "cannot parse point_index '" + std::string(fields[2]) + "'");
      }
    }
    const double x = parse_coordinate(fields[3], line_no, "x");
    const double y = parse_coordinate(fields[4], line_no, "y");

    if (out.empty() || out.back().id != id) {
      if (!out.empty()) {
        check_point_count(out.back(), contour_start_line, "line");
        finished.insert(out.back().id);
      }
      if (finished.contains(id)) {
        fail(ErrorKind::parse, line_no, "points of contour '" + id + "' are not contiguous");
      }
      out.push_back({id, group, {}});
      contour_start_line = line_no;
    } else {
      if (out.back().group != group) {
        fail(ErrorKind::parse, line_no, "contour '" + id + "' changes group");
      }
      if (index <= last_index) {
        fail(ErrorKind::parse, line_no, "point_index not increasing in contour '" + id + "'");
      }
    }
    last_index = index;
    out.back().points.push_back({x, y});
  }
  if (!out.empty()) check_point_count(out.back(), contour_start_line, "line");
  return out;
}

std::vector<RawContour> parse_json(std::string_view text) {
  if (trim(text).empty()) return {};
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::parse, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw Error(ErrorKind::parse, "top-level JSON value must be an array");

  std::vector<RawContour> out;
  for (std::size_t r = 0; r < doc.size(); ++r) {
    const auto& rec = doc[r];
    auto bad = [&](const std::string& what) {
      throw Error(ErrorKind::parse, "record " + std::to_string(r) + ": " + what);
    };
    if (!rec.is_object()) bad("not an object");
    if (!rec.contains("id") || !rec["id"].is_string()) bad("missing string field 'id'");
    if (!rec.contains("group") || !rec["group"].is_string()) bad("missing string field 'group'");
    if (!rec.contains("points") || !rec["points"].is_array()) bad("missing array field 'points'");
    RawContour c{rec["id"].get<std::string>(), rec["group"].get<std::string>(), {}};
    for (const auto& p : rec["points"]) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
        bad("each point must be [x, y]");
      }
      const Point pt{p[0].get<double>(), p[1].get<double>()};
      if (!std::isfinite(pt.x) || !std::isfinite(pt.y)) {
        throw Error(ErrorKind::validation, "record " + std::to_string(r) + ": non-finite coordinate");
      }
      c.points.push_back(pt);
    }
    check_point_count(c, r, "record");
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

std::vector<RawContour> parse_contours(std::string_view text, ContourFormat format) {
  return format == ContourFormat::csv ? parse_csv(text) : parse_json(text);
}

std::vector<RawContour> parse_contours(std::istream& in, ContourFormat format) {
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_contours(text, format);
}

std::string serialize_contours(std::span<const RawContour> contours, ContourFormat format) {
  if (format == ContourFormat::json) {
    nlohmann::json doc = nlohmann::json::array();
    for (const auto& c : contours) {
      nlohmann::json pts = nlohmann::json::array();
      for (const auto& p : c.points) pts.push_back({p.x, p.y});
      doc.push_back({{"id", c.id}, {"group", c.group}, {"points", std::move(pts)}});
    }
    return doc.dump(2) + "\n";
  }
  std::ostringstream out;
  out << kCsvHeader << '\n' << std::setprecision(17);
  for (const auto& c : contours) {
    for (std::size_t i = 0; i < c.points.size(); ++i) {
      out << c.id << ',' << c.group << ',' << i << ',' << c.points[i].x << ',' << c.points[i].y << '\n';
    }
  }
  return out.str();
}

}  // namespace shapeforge
