//
// Copyright 2026 The Campus AR Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "campus/staffdir.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace campus::staff {

namespace {

bool printable(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return c >= 0x20 && c <= 0x7E; });
}

void check_field(std::string_view name, std::string_view value) {
  if (value.empty()) throw PayloadError(PayloadErrc::EmptyField, std::string(name) + " is empty");
  if (!printable(value) || value.find('|') != std::string_view::npos) {
    throw PayloadError(PayloadErrc::IllegalCharacter,
                       std::string(name) + " '" + std::string(value) + "' must be printable ASCII without '|'");
  }
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  for (;;) {
    const auto pos = s.find(sep);
    out.push_back(s.substr(0, pos));
    if (pos == std::string_view::npos) return out;
    s.remove_prefix(pos + 1);
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DirectoryError(DirectoryErrc::ParseError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Header row then data rows; an entirely empty file is an empty table.
std::vector<CsvRow> read_table(const std::filesystem::path& path, const std::vector<std::string>& header) {
  auto rows = read_csv(read_file(path), path.string());
  if (rows.empty()) return rows;
  if (rows.front().fields != header) {
    std::string expected;
    for (const auto& h : header) expected += (expected.empty() ? "" : ",") + h;
    throw DirectoryError(DirectoryErrc::ParseError, path.string() + ":1: expected header '" + expected + "'");
  }
  rows.erase(rows.begin());
  for (const auto& row : rows) {
    if (row.fields.size() != header.size()) {
      throw DirectoryError(DirectoryErrc::ParseError, path.string() + ":" + std::to_string(row.line) + ": expected " +
                                                          std::to_string(header.size()) + " fields, got " +
                                                          std::to_string(row.fields.size()));
    }
    if (row.fields.front().empty()) {
      throw DirectoryError(DirectoryErrc::ParseError,
                           path.string() + ":" + std::to_string(row.line) + ": empty " + header.front());
    }
  }
  return rows;
}

}  // namespace

std::string_view to_string(PayloadErrc code) {
  switch (code) {
    case PayloadErrc::FieldTooLong: return "FieldTooLong";
    case PayloadErrc::IllegalCharacter: return "IllegalCharacter";
    case PayloadErrc::EmptyField: return "EmptyField";
    case PayloadErrc::BadSchemaTag: return "BadSchemaTag";
    case PayloadErrc::WrongFieldCount: return "WrongFieldCount";
    case PayloadErrc::NonNumericFloor: return "NonNumericFloor";
  }
  return "PayloadError";
}

std::string_view to_string(DirectoryErrc code) {
  switch (code) {
    case DirectoryErrc::ParseError: return "ParseError";
    case DirectoryErrc::DuplicateStaffId: return "DuplicateStaffId";
    case DirectoryErrc::DanglingAdvisor: return "DanglingAdvisor";
    case DirectoryErrc::DanglingDeskNode: return "DanglingDeskNode";
    case DirectoryErrc::UnknownStudent: return "UnknownStudent";
    case DirectoryErrc::UnknownStaff: return "UnknownStaff";
  }
  return "DirectoryError";
}

std::string encode_payload(const StaffLocationPayload& p) {
  check_field("building", p.building);
  check_field("node_id", p.node_id);
  if (p.staff_id) check_field("staff_id", *p.staff_id);
  std::string out = std::string(kSchemaTag) + "|" + p.building + "|" + std::to_string(p.floor) + "|" + p.node_id +
                    "|" + p.staff_id.value_or("");
  if (out.size() > kMaxPayloadBytes) {
    throw PayloadError(PayloadErrc::FieldTooLong, "payload is " + std::to_string(out.size()) + " bytes, limit " +
                                                      std::to_string(kMaxPayloadBytes));
  }
  return out;
}

StaffLocationPayload parse_payload(std::string_view s) {
  const auto fields = split(s, '|');
  if (fields.front() != kSchemaTag) {
    throw PayloadError(PayloadErrc::BadSchemaTag, "schema tag '" + std::string(fields.front()) + "' is not " +
                                                      std::string(kSchemaTag));
  }
  if (fields.size() != 5) {
    throw PayloadError(PayloadErrc::WrongFieldCount, "expected 5 fields, got " + std::to_string(fields.size()));
  }
  if (s.size() > kMaxPayloadBytes) {
    throw PayloadError(PayloadErrc::FieldTooLong, "payload exceeds " + std::to_string(kMaxPayloadBytes) + " bytes");
  }
  StaffLocationPayload p;
  const auto floor = fields[2];
  auto [ptr, ec] = std::from_chars(floor.data(), floor.data() + floor.size(), p.floor);
  if (floor.empty() || ec != std::errc() || ptr != floor.data() + floor.size()) {
    throw PayloadError(PayloadErrc::NonNumericFloor, "floor '" + std::string(floor) + "' is not an integer");
  }
  p.building = fields[1];
  p.node_id = fields[3];
  if (!fields[4].empty()) p.staff_id = std::string(fields[4]);
  check_field("building", p.building);
  check_field("node_id", p.node_id);
  if (p.staff_id) check_field("staff_id", *p.staff_id);
  return p;
}

std::vector<CsvRow> read_csv(std::string_view text, std::string_view source) {
  std::vector<CsvRow> rows;
  std::size_t line = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    // Skip blank lines between records.
    if (text[i] == '\n' || text[i] == '\r') {
      if (text[i] == '\n') ++line;
      ++i;
      continue;
    }
    CsvRow row{line, {}};
    std::string field;
    bool quoted = false;
    bool closed = false;  // just past a closing quote
    for (;;) {
      if (i >= text.size()) {
        if (quoted) {
          throw DirectoryError(DirectoryErrc::ParseError,
                               std::string(source) + ":" + std::to_string(row.line) + ": unterminated quote");
        }
        row.fields.push_back(std::move(field));
        break;
      }
      const char c = text[i++];
      if (quoted) {
        if (c == '"') {
          if (i < text.size() && text[i] == '"') {
            field += '"';
            ++i;
          } else {
            quoted = false;
            closed = true;
          }
        } else {
          if (c == '\n') ++line;
          field += c;
        }
        continue;
      }
      if (closed && c != ',' && c != '\n' && c != '\r') {
        throw DirectoryError(DirectoryErrc::ParseError,
                             std::string(source) + ":" + std::to_string(line) + ": text after closing quote");
      }
      closed = false;
      if (c == '"' && field.empty()) {
        quoted = true;
      } else if (c == ',') {
        row.fields.push_back(std::move(field));
        field.clear();
      } else if (c == '\n' || c == '\r') {
        if (c == '\r' && i < text.size() && text[i] == '\n') ++i;
        ++line;
        row.fields.push_back(std::move(field));
        break;
      } else {
        field += c;
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Directory::Directory(std::vector<StaffRecord> staff, std::vector<AdvisorAssignment> advisors,
                     const nav::CampusGraph& graph) {
  for (auto& s : staff) {
    if (!graph.contains(s.desk_node)) {
      throw DirectoryError(DirectoryErrc::DanglingDeskNode,
                           "staff '" + s.staff_id + "' sits at unknown node '" + s.desk_node + "'");
    }
    const auto id = s.staff_id;
    if (!staff_.emplace(id, std::move(s)).second) {
      throw DirectoryError(DirectoryErrc::DuplicateStaffId, "staff id '" + id + "' appears twice");
    }
  }
  for (auto& a : advisors) {
    if (!staff_.count(a.advisor_staff_id)) {
      throw DirectoryError(DirectoryErrc::DanglingAdvisor, "student '" + a.student_id + "' is assigned unknown staff '" +
                                                               a.advisor_staff_id + "'");
    }
    if (!advisors_.emplace(a.student_id, a.advisor_staff_id).second) {
      throw DirectoryError(DirectoryErrc::ParseError, "student '" + a.student_id + "' has two advisors");
    }
  }
}

const StaffRecord* Directory::find_staff(std::string_view staff_id) const {
  const auto it = staff_.find(std::string(staff_id));
  return it == staff_.end() ? nullptr : &it->second;
}

const StaffRecord& Directory::staff_member(std::string_view staff_id) const {
  if (const auto* s = find_staff(staff_id)) return *s;
  throw DirectoryError(DirectoryErrc::UnknownStaff, "no staff member '" + std::string(staff_id) + "'");
}

const StaffRecord* Directory::staff_at(std::string_view node) const {
  for (const auto& [id, s] : staff_) {
    if (s.desk_node == node) return &s;
  }
  return nullptr;
}

const StaffRecord& advisor_of(const Directory& d, std::string_view student_id) {
  const auto it = d.advisors().find(std::string(student_id));
  if (it == d.advisors().end()) {
    throw DirectoryError(DirectoryErrc::UnknownStudent, "no advisor assigned to student '" + std::string(student_id) + "'");
  }
  return d.staff_member(it->second);
}

Directory load_directory(const std::filesystem::path& staff_file, const std::filesystem::path& advisors_file,
                         const nav::CampusGraph& graph) {
  std::vector<StaffRecord> staff;
  for (auto& row : read_table(staff_file, {"staff_id", "name", "department", "specialization", "desk_node"})) {
    auto& f = row.fields;
    if (f[4].empty()) {
      throw DirectoryError(DirectoryErrc::ParseError,
                           staff_file.string() + ":" + std::to_string(row.line) + ": empty desk_node");
    }
    staff.push_back({std::move(f[0]), std::move(f[1]), std::move(f[2]), std::move(f[3]), std::move(f[4])});
  }
  std::vector<AdvisorAssignment> advisors;
  for (auto& row : read_table(advisors_file, {"student_id", "advisor_staff_id"})) {
    advisors.push_back({std::move(row.fields[0]), std::move(row.fields[1])});
  }
  return Directory(std::move(staff), std::move(advisors), graph);
}

nlohmann::json to_json(const StaffRecord& s) {
  return {{"staff_id", s.staff_id},
          {"name", s.name},
          {"department", s.department},
          {"specialization", s.specialization},
          {"desk_node", s.desk_node}};
}

nlohmann::json to_json(const StaffLocationPayload& p) {
  return {{"schema_tag", std::string(kSchemaTag)},
          {"building", p.building},
          {"floor", p.floor},
          {"node_id", p.node_id},
          {"staff_id", p.staff_id ? nlohmann::json(*p.staff_id) : nlohmann::json(nullptr)}};
}

}  // namespace campus::staff
