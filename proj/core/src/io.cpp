#include "bicenter/io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "bicenter/scalar.hpp"

namespace bicenter {

namespace {

struct Token {
  std::string text;
  int line;
};

std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> tokens;
  std::istringstream stream(text);
  std::string line;
  int number = 0;
  while (std::getline(stream, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream words(line);
    std::string word;
    while (words >> word) tokens.push_back(Token{word, number});
  }
  return tokens;
}

class TokenReader {
 public:
  explicit TokenReader(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  const Token& next(const char* what) {
    if (pos_ >= tokens_.size()) {
      int line = tokens_.empty() ? 1 : tokens_.back().line;
      throw ValidationError("line " + std::to_string(line) + ": missing " +
                            std::string(what));
    }
    return tokens_[pos_++];
  }

  int next_int(const char* what) {
    const Token& token = next(what);
    try {
      std::size_t used = 0;
      int value = std::stoi(token.text, &used);
      if (used != token.text.size()) throw std::invalid_argument(token.text);
      return value;
    } catch (const std::exception&) {
      throw ValidationError("line " + std::to_string(token.line) + ": expected integer " +
                            std::string(what) + ", got '" + token.text + "'");
    }
  }

  Scalar next_scalar(const char* what) {
    const Token& token = next(what);
    if (auto value = parse_scalar(token.text)) return *value;
    throw ValidationError("line " + std::to_string(token.line) + ": expected number " +
                          std::string(what) + ", got '" + token.text + "'");
  }

  void finish() const {
    if (pos_ < tokens_.size()) {
      throw ValidationError("line " + std::to_string(tokens_[pos_].line) +
                            ": unexpected trailing content '" + tokens_[pos_].text + "'");
    }
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

std::string scalar_to_text(const Scalar& value) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  Int den = denominator(value);
  if (den == 1) return numerator(value).str();
  // The format only allows decimals, so the denominator must be 2^a 5^b.
  int twos = 0, fives = 0;
  Int rest = den;
  while (rest % 2 == 0) {
    rest /= 2;
    ++twos;
  }
  while (rest % 5 == 0) {
    rest /= 5;
    ++fives;
  }
  if (rest != 1)
    throw ValidationError("value " + to_fraction_string(value) +
                          " has no finite decimal representation");
  int digits = std::max(twos, fives);
  Int scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  Int scaled = numerator(value) * (scale / den);
  bool negative = scaled < 0;
  std::string body = Int(boost::multiprecision::abs(scaled)).str();
  if (static_cast<int>(body.size()) <= digits)
    body.insert(body.begin(), digits + 1 - body.size(), '0');
  body.insert(body.size() - digits, ".");
  return (negative ? "-" : "") + body;
}

nlohmann::json rational_json(const Scalar& value) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  auto int_json = [](const Int& x) -> nlohmann::json {
    static const Int lo = std::numeric_limits<std::int64_t>::min();
    static const Int hi = std::numeric_limits<std::int64_t>::max();
    if (x >= lo && x <= hi) return x.convert_to<std::int64_t>();
    return x.str();  // exact fallback for values beyond 64 bits
  };
  return nlohmann::json{{"num", int_json(numerator(value))},
                        {"den", int_json(denominator(value))}};
}

nlohmann::json point_json(const Instance& instance, const EdgePoint& p) {
  const Edge& edge = instance.edge(p.edge);
  return nlohmann::json{
      {"u", edge.alpha()}, {"v", edge.beta()}, {"t", rational_json(p.t)}};
}

std::string point_text(const Instance& instance, const EdgePoint& p) {
  const Edge& edge = instance.edge(p.edge);
  return "edge (" + std::to_string(edge.alpha()) + ", " + std::to_string(edge.beta()) +
         "), offset " + to_fraction_string(p.t) + " from " + std::to_string(edge.alpha());
}

}  // namespace

ParsedInstance parse_instance_text(const std::string& text) {
  TokenReader reader(tokenize(text));
  ParsedInstance out;
  out.graph.n = reader.next_int("vertex count");
  int m = reader.next_int("edge count");
  int k = reader.next_int("pair count");
  if (out.graph.n < 0 || m < 0 || k < 0)
    throw ValidationError("line 1: counts must be non-negative");
  out.graph.weights.reserve(out.graph.n);
  for (int v = 0; v < out.graph.n; ++v)
    out.graph.weights.push_back(reader.next_scalar("vertex weight"));
  out.graph.edges.reserve(m);
  for (int e = 0; e < m; ++e) {
    int u = reader.next_int("edge endpoint");
    int v = reader.next_int("edge endpoint");
    out.graph.edges.push_back(Edge{u, v, reader.next_scalar("edge length")});
  }
  out.pairs.pairs.reserve(k);
  for (int i = 0; i < k; ++i) {
    int v = reader.next_int("pair member");
    int u = reader.next_int("pair member");
    out.pairs.pairs.emplace_back(v, u);
  }
  reader.finish();
  return out;
}

ParsedInstance load_instance_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return parse_instance_text(buffer.str());
}

std::string write_instance_text(const GraphDescription& graph, const PairDescription& pairs) {
  std::ostringstream out;
  out << graph.n << ' ' << graph.edges.size() << ' ' << pairs.pairs.size() << '\n';
  for (const Scalar& w : graph.weights) out << scalar_to_text(w) << '\n';
  for (const Edge& e : graph.edges)
    out << e.u << ' ' << e.v << ' ' << scalar_to_text(e.length) << '\n';
  for (auto [v, u] : pairs.pairs) out << v << ' ' << u << '\n';
  return out.str();
}

std::string solution_to_json(const Instance& instance, const Solution& solution,
                             const std::string& solver) {
  nlohmann::json j;
  j["lambda"] = rational_json(solution.lambda);
  j["q1"] = point_json(instance, solution.q1);
  j["q2"] = point_json(instance, solution.q2);
  j["assignment"] = solution.assign_first_to_q1;
  j["solver"] = solver;
  return j.dump(2) + "\n";
}

std::string solution_to_text(const Instance& instance, const Solution& solution,
                             const std::string& solver) {
  std::ostringstream out;
  out << "lambda = " << to_fraction_string(solution.lambda) << " (~"
      << to_decimal_string(solution.lambda) << ")\n";
  out << "q1: " << point_text(instance, solution.q1) << '\n';
  out << "q2: " << point_text(instance, solution.q2) << '\n';
  out << "solver: " << solver << '\n';
  for (int i = 0; i < instance.k(); ++i) {
    auto [v, u] = instance.pairs().pairs[i];
    bool first = solution.assign_first_to_q1[i];
    out << "pair " << i << ": " << v << " -> " << (first ? "q1" : "q2") << ", " << u
        << " -> " << (first ? "q2" : "q1") << '\n';
  }
  return out.str();
}

}  // namespace bicenter
