#include "vocarch/corpus.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "vocarch/csv.hpp"
#include "vocarch/dsp.hpp"
#include "vocarch/errors.hpp"

namespace vocarch {

const char* to_string(Gender g) { return g == Gender::F ? "F" : "M"; }

const char* to_string(Period p) {
  switch (p) {
    case Period::P1955: return "1955-56";
    case Period::P1975: return "1975-76";
    case Period::P1995: return "1995-96";
    case Period::P2015: return "2015-16";
  }
  return "?";
}

const char* to_string(AgeGroup a) {
  switch (a) {
    case AgeGroup::A20_35: return "20-35";
    case AgeGroup::A36_50: return "36-50";
    case AgeGroup::A51_65: return "51-65";
    case AgeGroup::A65plus: return ">65";
  }
  return "?";
}

Gender gender_from_string(const std::string& s) {
  if (s == "F" || s == "f") return Gender::F;
  if (s == "M" || s == "m") return Gender::M;
  throw_error(ErrorCode::SchemaError, "gender must be F or M, got '" + s + "'");
}

Period period_from_string(const std::string& s) {
  if (s == "1955-56" || s == "P1955") return Period::P1955;
  if (s == "1975-76" || s == "P1975") return Period::P1975;
  if (s == "1995-96" || s == "P1995") return Period::P1995;
  if (s == "2015-16" || s == "P2015") return Period::P2015;
  throw_error(ErrorCode::SchemaError, "unknown period '" + s + "'");
}

const SpeakerRecord& Corpus::speaker(const std::string& id) const {
  for (const auto& s : speakers)
    if (s.speaker_id == id) return s;
  throw_error(ErrorCode::DanglingReference, "unknown speaker " + id);
}

const ProgramRecord& Corpus::program(const std::string& id) const {
  for (const auto& p : programs)
    if (p.program_id == id) return p;
  throw_error(ErrorCode::DanglingReference, "unknown program " + id);
}

Period derive_period(int recording_year) {
  if (recording_year >= 1954 && recording_year <= 1957) return Period::P1955;
  if (recording_year >= 1974 && recording_year <= 1977) return Period::P1975;
  if (recording_year == 1995 || recording_year == 1996) return Period::P1995;
  if (recording_year == 2015 || recording_year == 2016) return Period::P2015;
  throw_error(ErrorCode::YearOutsideCorpusPeriods,
              "year " + std::to_string(recording_year) +
                  " is outside the corpus periods");
}

AgeGroup age_group_of(int age_years) {
  if (age_years < 20)
    throw_error(ErrorCode::AgeOutOfRange,
                "age " + std::to_string(age_years) + " is below 20");
  if (age_years <= 35) return AgeGroup::A20_35;
  if (age_years <= 50) return AgeGroup::A36_50;
  if (age_years <= 65) return AgeGroup::A51_65;
  return AgeGroup::A65plus;
}

AgeInfo derive_age(const SpeakerRecord& speaker, const ProgramRecord& program) {
  if (speaker.birth_year >= program.recording_year)
    throw_error(ErrorCode::SchemaError,
                "speaker " + speaker.speaker_id + " born in " +
                    std::to_string(speaker.birth_year) +
                    ", not before recording year " +
                    std::to_string(program.recording_year));
  const int age = program.recording_year - speaker.birth_year;
  return AgeInfo{age, age_group_of(age)};
}

namespace {

struct ManifestRow {
  std::string speaker_id, gender, program_id, raw_path, separated_path;
  int birth_year = 0, recording_year = 0;
  double start_s = 0.0, end_s = 0.0;
};

int parse_int(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw_error(ErrorCode::SchemaError, "bad integer for " + what + ": '" + s + "'");
  }
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw_error(ErrorCode::SchemaError, "bad number for " + what + ": '" + s + "'");
  }
}

std::vector<ManifestRow> rows_from_csv(const std::string& path) {
  auto table = csv::read_file(path);
  const char* required[] = {"speaker_id",     "gender",   "birth_year",
                            "program_id",     "recording_year", "raw_path",
                            "separated_path", "start_s",  "end_s"};
  std::unordered_map<std::string, int> col;
  for (const char* name : required) {
    int c = table.column(name);
    if (c < 0)
      throw_error(ErrorCode::SchemaError,
                  std::string("manifest is missing column '") + name + "'");
    col[name] = c;
  }
  std::vector<ManifestRow> rows;
  rows.reserve(table.rows.size());
  for (const auto& r : table.rows) {
    if (r.size() < table.header.size())
      throw_error(ErrorCode::SchemaError, "manifest row has too few fields");
    ManifestRow row;
    row.speaker_id = r[col["speaker_id"]];
    row.gender = r[col["gender"]];
    if (!r[col["birth_year"]].empty())
      row.birth_year = parse_int(r[col["birth_year"]], "birth_year");
    row.program_id = r[col["program_id"]];
    if (!r[col["recording_year"]].empty())
      row.recording_year = parse_int(r[col["recording_year"]], "recording_year");
    row.raw_path = r[col["raw_path"]];
    row.separated_path = r[col["separated_path"]];
    row.start_s = parse_double(r[col["start_s"]], "start_s");
    row.end_s = parse_double(r[col["end_s"]], "end_s");
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<ManifestRow> rows_from_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw_error(ErrorCode::SchemaError, "cannot open manifest " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw_error(ErrorCode::SchemaError, std::string("manifest JSON: ") + e.what());
  }
  if (!j.is_array())
    throw_error(ErrorCode::SchemaError, "manifest JSON must be an array of rows");
  std::vector<ManifestRow> rows;
  for (const auto& item : j) {
    try {
      ManifestRow row;
      row.speaker_id = item.at("speaker_id").get<std::string>();
      row.gender = item.value("gender", std::string());
      row.birth_year = item.value("birth_year", 0);
      row.program_id = item.at("program_id").get<std::string>();
      row.recording_year = item.value("recording_year", 0);
      row.raw_path = item.at("raw_path").get<std::string>();
      row.separated_path = item.value("separated_path", std::string());
      row.start_s = item.at("start_s").get<double>();
      row.end_s = item.at("end_s").get<double>();
      rows.push_back(std::move(row));
    } catch (const nlohmann::json::exception& e) {
      throw_error(ErrorCode::SchemaError, std::string("manifest JSON row: ") + e.what());
    }
  }
  return rows;
}

}  // namespace

Corpus ingest_manifest(const std::string& path, bool check_audio_exists) {
  namespace fs = std::filesystem;
  if (!fs::exists(path))
    throw_error(ErrorCode::SchemaError, "manifest not found: " + path);

  std::vector<ManifestRow> rows;
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json")
    rows = rows_from_json(path);
  else
    rows = rows_from_csv(path);

  const fs::path base = fs::path(path).parent_path();
  auto resolve = [&](const std::string& p) -> std::string {
    fs::path fp(p);
    if (fp.is_relative()) fp = base / fp;
    return fp.string();
  };

  Corpus corpus;
  std::unordered_map<std::string, std::size_t> speaker_idx;
  std::unordered_map<std::string, std::size_t> program_idx;

  for (const auto& row : rows) {
    if (row.end_s <= row.start_s)
      throw_error(ErrorCode::SchemaError,
                  "segment for " + row.speaker_id + " has end_s <= start_s");

    // Rows may leave gender/birth_year (or recording_year) empty to reference
    // a speaker/program defined by an earlier row; referencing an undefined
    // one is a dangling reference.
    auto sit = speaker_idx.find(row.speaker_id);
    if (sit == speaker_idx.end()) {
      if (row.gender.empty())
        throw_error(ErrorCode::DanglingReference,
                    "segment names unknown speaker '" + row.speaker_id + "'");
      SpeakerRecord sp{row.speaker_id, gender_from_string(row.gender),
                       row.birth_year};
      speaker_idx.emplace(row.speaker_id, corpus.speakers.size());
      corpus.speakers.push_back(std::move(sp));
    } else if (!row.gender.empty()) {
      const auto& sp = corpus.speakers[sit->second];
      if (to_string(sp.gender) != row.gender || sp.birth_year != row.birth_year)
        throw_error(ErrorCode::SchemaError,
                    "speaker " + row.speaker_id +
                        " has inconsistent gender/birth_year across rows");
    }

    auto pit = program_idx.find(row.program_id);
    if (pit == program_idx.end()) {
      if (row.recording_year == 0)
        throw_error(ErrorCode::DanglingReference,
                    "segment names unknown program '" + row.program_id + "'");
      ProgramRecord pr{row.program_id, row.recording_year,
                       derive_period(row.recording_year)};
      program_idx.emplace(row.program_id, corpus.programs.size());
      corpus.programs.push_back(std::move(pr));
    } else if (row.recording_year != 0) {
      const auto& pr = corpus.programs[pit->second];
      if (pr.recording_year != row.recording_year)
        throw_error(ErrorCode::SchemaError,
                    "program " + row.program_id +
                        " has inconsistent recording_year across rows");
    }

    SegmentRecord seg;
    seg.speaker_id = row.speaker_id;
    seg.program_id = row.program_id;
    seg.raw_audio_path = resolve(row.raw_path);
    if (!row.separated_path.empty())
      seg.separated_audio_path = resolve(row.separated_path);
    seg.start_s = row.start_s;
    seg.end_s = row.end_s;
    corpus.segments.push_back(std::move(seg));
  }

  // Cross-link validation: birth before recording for every pairing.
  for (const auto& seg : corpus.segments) {
    const auto& sp = corpus.speakers[speaker_idx.at(seg.speaker_id)];
    const auto& pr = corpus.programs[program_idx.at(seg.program_id)];
    if (sp.birth_year >= pr.recording_year)
      throw_error(ErrorCode::SchemaError,
                  "speaker " + sp.speaker_id + " born " +
                      std::to_string(sp.birth_year) + " but program " +
                      pr.program_id + " recorded " +
                      std::to_string(pr.recording_year));
  }

  if (check_audio_exists) {
    for (const auto& seg : corpus.segments) {
      if (!fs::exists(seg.raw_audio_path))
        throw_error(ErrorCode::MissingAudio, seg.raw_audio_path);
      if (seg.separated_audio_path && !fs::exists(*seg.separated_audio_path))
        throw_error(ErrorCode::MissingAudio, *seg.separated_audio_path);
    }
  }
  return corpus;
}

TelephoneCheck detect_telephone_quality(const Signal& signal,
                                        double ratio_threshold) {
  if (signal.duration_s() < 1.0)
    throw_error(ErrorCode::TooShort,
                "telephone detection needs at least 1 s of audio");
  TelephoneCheck check;
  check.high_band_fraction =
      dsp::high_band_energy_fraction(signal.samples, signal.sample_rate, 3800.0);
  check.is_telephone =
      signal.sample_rate <= 8000.0 || check.high_band_fraction < ratio_threshold;
  return check;
}

}  // namespace vocarch
