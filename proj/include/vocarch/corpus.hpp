#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vocarch/signal.hpp"

namespace vocarch {

enum class Gender { F, M };
enum class Period { P1955, P1975, P1995, P2015 };
enum class AgeGroup { A20_35, A36_50, A51_65, A65plus };

const char* to_string(Gender g);
const char* to_string(Period p);
const char* to_string(AgeGroup a);
Gender gender_from_string(const std::string& s);
Period period_from_string(const std::string& s);

struct SpeakerRecord {
  std::string speaker_id;
  Gender gender = Gender::F;
  int birth_year = 0;
};

struct ProgramRecord {
  std::string program_id;
  int recording_year = 0;
  Period period = Period::P1955;
};

struct SegmentRecord {
  std::string speaker_id;
  std::string program_id;
  std::string raw_audio_path;
  std::optional<std::string> separated_audio_path;
  double start_s = 0.0;
  double end_s = 0.0;
};

struct Corpus {
  std::vector<SpeakerRecord> speakers;
  std::vector<ProgramRecord> programs;
  std::vector<SegmentRecord> segments;

  const SpeakerRecord& speaker(const std::string& id) const;
  const ProgramRecord& program(const std::string& id) const;
};

// Manifest columns: speaker_id,gender,birth_year,program_id,recording_year,
// raw_path,separated_path,start_s,end_s (separated_path may be empty).
// A .json file with the same fields per row is accepted too.
// check_audio_exists validates every referenced WAV path up front.
Corpus ingest_manifest(const std::string& path, bool check_audio_exists = true);

struct AgeInfo {
  int years = 0;
  AgeGroup group = AgeGroup::A20_35;
};

// Calendar-year age at recording time; the corpus covers adults >= 20.
AgeInfo derive_age(const SpeakerRecord& speaker, const ProgramRecord& program);

AgeGroup age_group_of(int age_years);

// 1954-1957, 1974-1977, 1995-1996, 2015-2016; anything else is an error.
Period derive_period(int recording_year);

struct TelephoneCheck {
  bool is_telephone = false;
  double high_band_fraction = 0.0;  // energy fraction above the split
};

// Narrowband detector: energy above 3.8 kHz under `ratio_threshold` of the
// total, or a native rate at or below 8 kHz, marks a telephone channel.
TelephoneCheck detect_telephone_quality(const Signal& signal,
                                        double ratio_threshold = 0.005);

}  // namespace vocarch
