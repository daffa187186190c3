// The 8-variable signature table: JSON round trip, the compiled-in copy, and
// the generator that rebuilds it from orbit samples.
#include <mutex>
#include <thread>

#include "atlas_internal.hpp"
#include "json.hpp"

namespace skewrank {

namespace detail {
extern const std::string_view kEmbeddedSignatureTable;
}

std::vector<OrbitLabel> SignatureTable::match(const std::map<std::string, size_t>& inv) const {
  std::vector<OrbitLabel> out;
  for (const auto& e : entries) {
    bool ok = true;
    for (const auto& [k, v] : e.invariants) {
      auto it = inv.find(k);
      if (it == inv.end() || it->second != v) ok = false;
    }
    if (ok) out.push_back(e.label);
  }
  return out;
}

std::string SignatureTable::to_json() const {
  nlohmann::ordered_json j;
  j["version"] = version;
  j["entries"] = nlohmann::ordered_json::array();
  for (const auto& e : entries) {
    nlohmann::ordered_json je;
    je["label"] = to_string(e.label);
    je["rank"] = e.rank;
    je["samples"] = e.samples;
    nlohmann::ordered_json inv = nlohmann::ordered_json::object();
    for (const auto& [k, v] : e.invariants) inv[k] = v;
    je["invariants"] = inv;
    j["entries"].push_back(je);
  }
  return j.dump(2) + "\n";
}

SignatureTable SignatureTable::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("signature table: ") + e.what());
  }
  SignatureTable t;
  try {
    t.version = j.at("version").get<int>();
    for (const auto& je : j.at("entries")) {
      SignatureTableEntry e;
      e.label = parse_label(je.at("label").get<std::string>());
      e.rank = je.at("rank").get<int>();
      e.samples = je.value("samples", 0);
      for (const auto& [k, v] : je.at("invariants").items()) e.invariants[k] = v.get<size_t>();
      t.entries.push_back(std::move(e));
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("signature table: ") + e.what());
  }
  if (t.version != 1) throw std::invalid_argument("signature table: unsupported version");
  return t;
}

namespace {
std::mutex table_mutex;
SignatureTable& table_slot() {
  static SignatureTable table = SignatureTable::from_json(std::string(detail::kEmbeddedSignatureTable));
  return table;
}
}  // namespace

const SignatureTable& signature_table() {
  std::lock_guard<std::mutex> lock(table_mutex);
  return table_slot();
}

void set_signature_table(const SignatureTable& table) {
  std::lock_guard<std::mutex> lock(table_mutex);
  table_slot() = table;
}

SignatureTable generate_signature_table(int samples_per_label, uint64_t seed, int jobs) {
  std::vector<OrbitLabel> labels;
  for (OrbitLabel l : all_labels())
    if (info(l).ambient == 8) labels.push_back(l);
  std::vector<SignatureTableEntry> entries(labels.size());
  std::vector<std::string> errors(labels.size());
  const size_t nj = static_cast<size_t>(std::max(1, jobs));
  auto work = [&](size_t tid) {
    for (size_t i = tid; i < labels.size(); i += nj) {
      SignatureTableEntry& e = entries[i];
      e.label = labels[i];
      e.rank = info(labels[i]).rank;
      for (int s = 0; s < samples_per_label; ++s) {
        Multivector t = orbit_sample(labels[i], seed + static_cast<uint64_t>(s));
        auto inv = rank_invariants8(essential_space(t).reduced);
        if (s == 0) e.invariants = inv;
        else if (inv != e.invariants) errors[i] = to_string(labels[i]) + ": samples disagree";
        ++e.samples;
      }
    }
  };
  if (nj == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (size_t tid = 0; tid < nj; ++tid) pool.emplace_back(work, tid);
    for (auto& th : pool) th.join();
  }
  for (const auto& err : errors)
    if (!err.empty()) throw InternalInconsistency(err);
  SignatureTable table;
  table.entries = std::move(entries);
  return table;
}

}  // namespace skewrank
