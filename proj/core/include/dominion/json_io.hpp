#pragma once

#include <optional>
#include <string>

#include "dominion/domination.hpp"

namespace dominion {

// All floats are written with 17 significant digits and objects keep a fixed
// key order, so equal inputs produce byte-identical files.
std::string format_double(double x);

// Minimal streaming writer for canonical report/instance emission.
class JsonWriter {
public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(const std::string& k);
  JsonWriter& value(double x);
  JsonWriter& value(int x);
  JsonWriter& value(uint64_t x);
  JsonWriter& value(bool b);
  JsonWriter& value(const std::string& s);
  JsonWriter& value(const char* s);
  JsonWriter& value(const RVec& v);
  JsonWriter& value(const CVec& v);  // array of [re, im] pairs
  JsonWriter& value(const Matrix& m);  // row-major array of [re, im] pairs
  JsonWriter& null_value();

  std::string str() const { return out_; }

private:
  void comma();
  std::string out_;
  std::vector<bool> need_comma_;
  bool after_key_ = false;
};

enum class InstanceKind { Graph, Magnetic, ConeVector, OperatorPair, OperatorOnCone };

InstanceKind detect_instance_kind(const std::string& json_text);

WeightedGraph parse_graph(const std::string& json_text);
MagneticInstance parse_magnetic(const std::string& json_text);

struct ConeInstance {
  Cone cone;
  std::optional<RVec> vector;
};
ConeInstance parse_cone_instance(const std::string& json_text);

struct OperatorPairInstance {
  Pairing pairing;
  OperatorForm a;
  OperatorForm b;
};
OperatorPairInstance parse_operator_pair(const std::string& json_text);

struct OperatorOnConeInstance {
  Cone cone;
  OperatorForm op;
};
OperatorOnConeInstance parse_operator_on_cone(const std::string& json_text);

// canonical serialization (stable ordering, 17 significant digits)
std::string serialize_graph(const WeightedGraph& g);
std::string serialize_magnetic(const MagneticInstance& inst);

std::string serialize_report(const DominationReport& rep, const std::string& command);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace dominion
