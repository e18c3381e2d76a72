#include "vecpack/io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace vecpack {

using nlohmann::json;

namespace {

std::vector<double> parse_item_array(const json& row, std::size_t index) {
  if (!row.is_array()) {
    throw ParseError("items[" + std::to_string(index) + "]: expected an array of numbers");
  }
  std::vector<double> coords;
  for (std::size_t k = 0; k < row.size(); ++k) {
    if (!row[k].is_number()) {
      throw ParseError("items[" + std::to_string(index) + "][" + std::to_string(k) +
                       "]: expected a number");
    }
    const double v = row[k].get<double>();
    if (!(v >= 0.0 && v <= 1.0)) {
      throw ParseError("items[" + std::to_string(index) + "][" + std::to_string(k) +
                       "]: value " + row[k].dump() + " is outside [0, 1]");
    }
    coords.push_back(v);
  }
  return coords;
}

}  // namespace

Instance parse_instance_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("instance JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("instance JSON: expected an object");
  if (!doc.contains("d") || !doc["d"].is_number_integer()) {
    throw ParseError("instance JSON: field \"d\" must be an integer");
  }
  if (!doc.contains("items") || !doc["items"].is_array()) {
    throw ParseError("instance JSON: field \"items\" must be an array");
  }
  const auto d = doc["d"].get<long long>();
  if (d < 1) throw ParseError("instance JSON: field \"d\" must be positive");
  std::vector<ItemVector> items;
  const json& rows = doc["items"];
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::vector<double> coords = parse_item_array(rows[i], i);
    if (coords.size() != static_cast<std::size_t>(d)) {
      throw ParseError("items[" + std::to_string(i) + "]: has " + std::to_string(coords.size()) +
                       " coordinates, expected " + std::to_string(d));
    }
    try {
      items.emplace_back(std::move(coords));
    } catch (const InputError& e) {
      throw ParseError("items[" + std::to_string(i) + "]: " + e.what());
    }
  }
  return Instance(static_cast<std::size_t>(d), std::move(items));
}

Instance parse_instance_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::size_t d = 0;
  std::vector<ItemVector> items;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::vector<double> coords;
    std::string tok;
    while (fields >> tok) {
      if (coords.empty() && tok[0] == '#') break;
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw ParseError("line " + std::to_string(line_no) + ", field " +
                         std::to_string(coords.size() + 1) + ": not a number: '" + tok + "'");
      }
      coords.push_back(v);
    }
    if (coords.empty()) continue;
    if (d == 0) d = coords.size();
    if (coords.size() != d) {
      throw ParseError("line " + std::to_string(line_no) + ": has " +
                       std::to_string(coords.size()) + " fields, expected " + std::to_string(d));
    }
    try {
      items.emplace_back(std::move(coords));
    } catch (const InputError& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (d == 0) throw ParseError("text instance has no items, dimension unknown");
  return Instance(d, std::move(items));
}

Instance parse_instance(const std::string& text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{' ? parse_instance_json(text) : parse_instance_text(text);
  }
  throw ParseError("empty instance file");
}

std::string instance_to_json(const Instance& inst) {
  json doc;
  doc["d"] = inst.dimension();
  doc["items"] = json::array();
  for (const auto& item : inst.items()) {
    doc["items"].push_back(std::vector<double>(item.coords().begin(), item.coords().end()));
  }
  return doc.dump() + "\n";
}

std::string instance_to_text(const Instance& inst) {
  std::string out;
  char buf[64];
  for (const auto& item : inst.items()) {
    for (std::size_t k = 0; k < item.dimension(); ++k) {
      if (k > 0) out += ' ';
      const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, item[k]);
      out.append(buf, ptr);
    }
    out += '\n';
  }
  return out;
}

Packing parse_packing_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("packing JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("packing JSON: expected an object");
  if (!doc.contains("bins") || !doc["bins"].is_number_integer()) {
    throw ParseError("packing JSON: field \"bins\" must be an integer");
  }
  if (!doc.contains("assignment") || !doc["assignment"].is_array()) {
    throw ParseError("packing JSON: field \"assignment\" must be an array");
  }
  Packing pk;
  pk.bin_count = doc["bins"].get<int>();
  const json& a = doc["assignment"];
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_number_integer()) {
      throw ParseError("assignment[" + std::to_string(i) + "]: expected an integer");
    }
    pk.assignment.push_back(a[i].get<int>());
  }
  return pk;
}

json packing_to_json(const Packing& pk) {
  return json{{"bins", pk.bin_count}, {"assignment", pk.assignment}};
}

json trace_to_json(const RoundingTrace& trace) {
  json rounds = json::array();
  for (const auto& r : trace.rounds) {
    json rec{{"branch", to_string(r.branch)},
             {"m_prime", r.m_prime},
             {"remaining_before", r.remaining_before},
             {"items_packed", r.items_packed},
             {"bins_used", r.bins_used},
             {"fallback", r.fallback},
             {"dual_objective", r.dual_objective},
             {"column_max_bound", r.column_max_bound},
             {"quadratic_objective", r.quadratic_objective}};
    if (!r.note.empty()) rec["note"] = r.note;
    rounds.push_back(std::move(rec));
  }
  return json{{"rounds", std::move(rounds)}, {"items_packed", trace.items_packed()}};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << contents;
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace vecpack
