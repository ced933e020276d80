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

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "campus/error.hpp"
#include "campus/navgraph.hpp"

namespace campus::staff {

inline constexpr std::string_view kSchemaTag = "HCTIS1";
/// Byte-mode capacity of a version-3-M symbol, so every payload fits one.
inline constexpr std::size_t kMaxPayloadBytes = 42;

/// Content of an entrance-board or relocation QR code.
struct StaffLocationPayload {
  std::string building;
  int floor = 0;
  nav::NodeId node_id;
  std::optional<std::string> staff_id;
  friend bool operator==(const StaffLocationPayload&, const StaffLocationPayload&) = default;
};

enum class PayloadErrc { FieldTooLong, IllegalCharacter, EmptyField, BadSchemaTag, WrongFieldCount, NonNumericFloor };
std::string_view to_string(PayloadErrc code);
using PayloadError = CodedError<PayloadErrc>;

/// `HCTIS1|<building>|<floor>|<node_id>|<staff_id or empty>`.
/// Throws PayloadError (FieldTooLong, IllegalCharacter, EmptyField).
std::string encode_payload(const StaffLocationPayload& p);
/// Inverse of encode_payload. Throws PayloadError.
StaffLocationPayload parse_payload(std::string_view s);

struct StaffRecord {
  std::string staff_id;
  std::string name;
  std::string department;
  std::string specialization;
  nav::NodeId desk_node;
  friend bool operator==(const StaffRecord&, const StaffRecord&) = default;
};

struct AdvisorAssignment {
  std::string student_id;
  std::string advisor_staff_id;
};

enum class DirectoryErrc { ParseError, DuplicateStaffId, DanglingAdvisor, DanglingDeskNode, UnknownStudent, UnknownStaff };
std::string_view to_string(DirectoryErrc code);
using DirectoryError = CodedError<DirectoryErrc>;

/// Staff and advisor tables with referential integrity against a graph.
/// Immutable once built; relocation means building a new Directory.
class Directory {
 public:
  Directory() = default;
  /// Throws DirectoryError (DuplicateStaffId, DanglingAdvisor,
  /// DanglingDeskNode, ParseError for a repeated student id).
  Directory(std::vector<StaffRecord> staff, std::vector<AdvisorAssignment> advisors, const nav::CampusGraph& graph);

  const std::map<std::string, StaffRecord>& staff() const noexcept { return staff_; }
  const std::map<std::string, std::string>& advisors() const noexcept { return advisors_; }

  /// Throws DirectoryError(UnknownStaff).
  const StaffRecord& staff_member(std::string_view staff_id) const;
  const StaffRecord* find_staff(std::string_view staff_id) const;
  /// First staff member (by id) whose desk is `node`, if any.
  const StaffRecord* staff_at(std::string_view node) const;

 private:
  std::map<std::string, StaffRecord> staff_;
  std::map<std::string, std::string> advisors_;  // student -> staff
};

/// Throws DirectoryError(UnknownStudent).
const StaffRecord& advisor_of(const Directory& d, std::string_view student_id);

/// Reads `staff_id,name,department,specialization,desk_node` and
/// `student_id,advisor_staff_id` CSV files (header row required unless the
/// file is empty). Throws DirectoryError.
Directory load_directory(const std::filesystem::path& staff_file, const std::filesystem::path& advisors_file,
                         const nav::CampusGraph& graph);

/// Minimal RFC 4180 reader: comma separated, double-quoted fields may hold
/// commas and doubled quotes. Throws DirectoryError(ParseError).
struct CsvRow {
  std::size_t line = 0;  // 1-based line where the record starts
  std::vector<std::string> fields;
};
std::vector<CsvRow> read_csv(std::string_view text, std::string_view source);

nlohmann::json to_json(const StaffRecord& s);
nlohmann::json to_json(const StaffLocationPayload& p);

}  // namespace campus::staff
