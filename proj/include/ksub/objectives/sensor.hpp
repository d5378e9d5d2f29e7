#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "ksub/objective.hpp"

namespace ksub {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raw sensor log: one reading per (location, type, timestamp). This is the
// on-disk form; quantization happens on load.
struct SensorReading {
  int location;
  int type;       // 1-based sensor type
  long timestamp;
  double value;
};

struct SensorLog {
  std::vector<SensorReading> rows;
};

// Quantized synchronized table: one column per (type, location) variable,
// one row per timestamp at which every variable was observed. Entries are
// bin indices in [0, column domain size).
struct SensorModel {
  int locations = 0;  // n
  int types = 0;      // k
  int bins = 0;
  std::vector<std::vector<int>> records;  // records[r][column]
  std::vector<int> domain_sizes;          // per column

  int column(int type, int location) const {
    return (type - 1) * locations + location;
  }
};

// Empirical joint Shannon entropy of the selected variables: x(u) = i selects
// the column of sensor type i at location u. Natural log by default.
class EntropyObjective final : public Objective {
 public:
  explicit EntropyObjective(SensorModel model, bool log2 = false);

  std::string name() const override { return "entropy"; }
  bool claims_exact_ksubmodular() const override { return true; }

  const SensorModel& model() const { return model_; }

 protected:
  double value_of(const Assignment& x) const override;

 private:
  SensorModel model_;
  double log_scale_;
};

double entropy_eval(const SensorModel& model, const Assignment& x,
                    bool log2 = false);

// Correlated synthetic log: each record draws a shared latent level, and each
// column copies it with probability `correlation`, otherwise draws its own.
// Values are small integers, so quantization is exact.
SensorLog gen_sensor_log(int locations, int types, int records, int levels,
                         double correlation, uint64_t seed);

// Pivot a raw log into the synchronized quantized table. Timestamps missing
// any (type, location) reading are dropped; each column is binned into
// `bins` equal-width bins over its observed range.
SensorModel quantize_sensor_log(const SensorLog& log, int locations, int types,
                                int bins);

SensorModel gen_sensor(int locations, int types, int records, int bins,
                       uint64_t seed, double correlation = 0.7);

std::shared_ptr<EntropyObjective> gen_sensor_objective(int locations, int types,
                                                       int records, int bins,
                                                       uint64_t seed,
                                                       double correlation = 0.7);

// CSV with header "location,type,timestamp,value".
void write_sensor_csv(const SensorLog& log, std::ostream& out);
SensorLog read_sensor_csv(std::istream& in, int expected_types = 0);
SensorModel load_sensor_csv(const std::string& path, int bins,
                            int expected_types = 0);

}  // namespace ksub
