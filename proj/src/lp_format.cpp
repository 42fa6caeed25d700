#include "btiepi/lp_format.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace btiepi {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_terms(std::ostream& out, const LinearProgram& lp,
                 const std::vector<std::pair<int, double>>& terms) {
  bool first = true;
  int line_len = 0;
  for (const auto& [col, coef] : terms) {
    if (coef == 0.0) continue;
    std::string piece;
    if (coef < 0.0)
      piece = first ? "-" : "- ";
    else if (!first)
      piece = "+ ";
    const double mag = std::abs(coef);
    if (mag != 1.0) piece += num(mag) + " ";
    piece += lp.cols[col].name;
    if (line_len + static_cast<int>(piece.size()) > 200) {
      out << "\n   ";
      line_len = 3;
    } else if (!first) {
      out << " ";
      ++line_len;
    }
    out << piece;
    line_len += static_cast<int>(piece.size());
    first = false;
  }
  if (first) out << "0 " << lp.cols.at(0).name;  // all-zero expression
}

}  // namespace

void write_lp(std::ostream& out, const LinearProgram& lp) {
  out << "\\ " << lp.name << "\n";
  out << (lp.maximize ? "Maximize\n" : "Minimize\n");
  std::vector<std::pair<int, double>> obj;
  for (int j = 0; j < static_cast<int>(lp.cols.size()); ++j)
    if (lp.cols[j].objective != 0.0) obj.push_back({j, lp.cols[j].objective});
  out << " obj: ";
  write_terms(out, lp, obj);
  out << "\nSubject To\n";
  for (const auto& row : lp.rows) {
    out << " " << row.name << ": ";
    write_terms(out, lp, row.terms);
    switch (row.sense) {
      case Sense::LE: out << " <= "; break;
      case Sense::GE: out << " >= "; break;
      case Sense::EQ: out << " = "; break;
    }
    out << num(row.rhs) << "\n";
  }
  out << "Bounds\n";
  for (const auto& col : lp.cols) {
    const bool default_bounds = col.lower == 0.0 && col.upper == kInf;
    if (default_bounds) continue;
    if (!std::isfinite(col.lower) && !std::isfinite(col.upper)) {
      out << " " << col.name << " free\n";
      continue;
    }
    out << " ";
    if (std::isfinite(col.lower))
      out << num(col.lower) << " <= ";
    else
      out << "-inf <= ";
    out << col.name;
    if (std::isfinite(col.upper)) out << " <= " << num(col.upper);
    out << "\n";
  }
  std::vector<const Column*> binaries, generals;
  for (const auto& col : lp.cols) {
    if (!col.integer) continue;
    if (col.lower == 0.0 && col.upper == 1.0)
      binaries.push_back(&col);
    else
      generals.push_back(&col);
  }
  if (!binaries.empty()) {
    out << "Binary\n";
    for (const auto* col : binaries) out << " " << col->name << "\n";
  }
  if (!generals.empty()) {
    out << "General\n";
    for (const auto* col : generals) out << " " << col->name << "\n";
  }
  out << "End\n";
}

std::string write_lp_string(const LinearProgram& lp) {
  std::ostringstream out;
  write_lp(out, lp);
  return out.str();
}

namespace {

struct Token {
  enum Kind { Name, Number, Op, Colon } kind;
  std::string text;
  double value = 0.0;
};

bool name_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
}

std::vector<Token> tokenize(std::istream& in) {
  std::vector<Token> tokens;
  std::string line;
  while (std::getline(in, line)) {
    std::size_t pos = 0;
    while (pos < line.size()) {
      const char c = line[pos];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos;
        continue;
      }
      if (c == '\\') break;  // comment to end of line
      if (c == ':') {
        tokens.push_back({Token::Colon, ":", 0.0});
        ++pos;
        continue;
      }
      if (c == '<' || c == '>' || c == '=') {
        std::string op(1, c);
        if (pos + 1 < line.size() && line[pos + 1] == '=') {
          op += '=';
          ++pos;
        }
        tokens.push_back({Token::Op, op == "<" ? "<=" : op == ">" ? ">=" : op, 0.0});
        ++pos;
        continue;
      }
      if (c == '+' || c == '-') {
        tokens.push_back({Token::Op, std::string(1, c), 0.0});
        ++pos;
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        std::size_t end = pos;
        while (end < line.size() &&
               (std::isdigit(static_cast<unsigned char>(line[end])) || line[end] == '.' ||
                line[end] == 'e' || line[end] == 'E' ||
                ((line[end] == '+' || line[end] == '-') && end > pos &&
                 (line[end - 1] == 'e' || line[end - 1] == 'E'))))
          ++end;
        const std::string text = line.substr(pos, end - pos);
        tokens.push_back({Token::Number, text, std::stod(text)});
        pos = end;
        continue;
      }
      if (name_start(c)) {
        std::size_t end = pos;
        while (end < line.size() && name_char(line[end])) ++end;
        tokens.push_back({Token::Name, line.substr(pos, end - pos), 0.0});
        pos = end;
        continue;
      }
      throw std::invalid_argument("lp parse: unexpected character '" + std::string(1, c) + "'");
    }
  }
  return tokens;
}

std::string lowered(const std::string& s) {
  std::string out = s;
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

class LpParser {
 public:
  explicit LpParser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  LinearProgram parse() {
    std::string section = expect_section();
    if (section == "maximize") lp_.maximize = true;
    else if (section != "minimize") throw std::invalid_argument("lp parse: expected Minimize/Maximize");
    parse_objective();
    if (lowered_section() != "subject") throw std::invalid_argument("lp parse: expected Subject To");
    ++pos_;  // subject
    if (!at_end() && lowered(tokens_[pos_].text) == "to") ++pos_;
    parse_rows();
    while (!at_end()) {
      const std::string sec = lowered(tokens_[pos_].text);
      ++pos_;
      if (sec == "bounds") parse_bounds();
      else if (sec == "binary" || sec == "binaries" || sec == "bin") parse_integers(true);
      else if (sec == "general" || sec == "generals" || sec == "gen") parse_integers(false);
      else if (sec == "end") break;
      else throw std::invalid_argument("lp parse: unknown section '" + sec + "'");
    }
    finish();
    return std::move(lp_);
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  LinearProgram lp_;
  std::map<std::string, int> columns_;
  std::map<int, std::pair<double, double>> bounds_;  // explicit bounds by column
  std::map<int, bool> integer_;

  bool at_end() const { return pos_ >= tokens_.size(); }

  bool is_section_word(const std::string& word) const {
    const std::string w = lowered(word);
    return w == "subject" || w == "bounds" || w == "binary" || w == "binaries" || w == "bin" ||
           w == "general" || w == "generals" || w == "gen" || w == "end" || w == "free";
  }

  std::string expect_section() {
    if (at_end() || tokens_[pos_].kind != Token::Name)
      throw std::invalid_argument("lp parse: missing section header");
    return lowered(tokens_[pos_++].text);
  }

  std::string lowered_section() const {
    return at_end() ? "" : lowered(tokens_[pos_].text);
  }

  int column(const std::string& name) {
    auto it = columns_.find(name);
    if (it != columns_.end()) return it->second;
    const int idx = static_cast<int>(columns_.size());
    columns_.emplace(name, idx);
    lp_.cols.push_back({name, 0.0, kInf, 0.0, false});
    return idx;
  }

  // expression := [name ':'] {('+'|'-')* [number] name}
  // Stops at a sense operator or a section keyword.
  void parse_expression(std::vector<std::pair<int, double>>& terms, std::string* label) {
    if (label && pos_ + 1 < tokens_.size() && tokens_[pos_].kind == Token::Name &&
        tokens_[pos_ + 1].kind == Token::Colon) {
      *label = tokens_[pos_].text;
      pos_ += 2;
    }
    double sign = 1.0;
    bool pending_coef = false;
    double coef = 1.0;
    while (!at_end()) {
      const Token& tok = tokens_[pos_];
      if (tok.kind == Token::Op) {
        if (tok.text == "+") { ++pos_; continue; }
        if (tok.text == "-") { sign = -sign; ++pos_; continue; }
        break;  // sense operator ends the expression
      }
      if (tok.kind == Token::Number) {
        coef = tok.value;
        pending_coef = true;
        ++pos_;
        continue;
      }
      if (tok.kind == Token::Name) {
        if (!pending_coef && is_section_word(tok.text)) break;
        if (pos_ + 1 < tokens_.size() && tokens_[pos_ + 1].kind == Token::Colon) break;
        const double value = sign * (pending_coef ? coef : 1.0);
        if (value != 0.0) terms.push_back({column(tok.text), value});
        sign = 1.0;
        coef = 1.0;
        pending_coef = false;
        ++pos_;
        continue;
      }
      throw std::invalid_argument("lp parse: unexpected token in expression");
    }
    if (pending_coef) throw std::invalid_argument("lp parse: dangling coefficient");
  }

  void parse_objective() {
    std::vector<std::pair<int, double>> terms;
    std::string label;
    parse_expression(&terms, &label);
    for (const auto& [col, coef] : terms) lp_.cols[col].objective += coef;
  }

  void parse_rows() {
    while (!at_end()) {
      if (tokens_[pos_].kind == Token::Name && is_section_word(tokens_[pos_].text) &&
          !(pos_ + 1 < tokens_.size() && tokens_[pos_ + 1].kind == Token::Colon))
        return;
      std::vector<std::pair<int, double>> terms;
      std::string label = "c" + std::to_string(lp_.rows.size() + 1);
      parse_expression(&terms, &label);
      if (at_end() || tokens_[pos_].kind != Token::Op)
        throw std::invalid_argument("lp parse: constraint without sense");
      const std::string op = tokens_[pos_++].text;
      Sense sense = op == "<=" ? Sense::LE : op == ">=" ? Sense::GE : Sense::EQ;
      double sign = 1.0;
      while (!at_end() && tokens_[pos_].kind == Token::Op) {
        if (tokens_[pos_].text == "-") sign = -sign;
        else if (tokens_[pos_].text != "+")
          throw std::invalid_argument("lp parse: malformed right-hand side");
        ++pos_;
      }
      if (at_end() || tokens_[pos_].kind != Token::Number)
        throw std::invalid_argument("lp parse: missing right-hand side");
      const double rhs = sign * tokens_[pos_++].value;
      lp_.rows.push_back({label, std::move(terms), sense, rhs});
    }
  }

  double signed_number() {
    double sign = 1.0;
    while (!at_end() && tokens_[pos_].kind == Token::Op) {
      if (tokens_[pos_].text == "-") sign = -sign;
      ++pos_;
    }
    if (at_end()) throw std::invalid_argument("lp parse: expected a number");
    if (tokens_[pos_].kind == Token::Name) {
      const std::string word = lowered(tokens_[pos_++].text);
      if (word == "inf" || word == "infinity") return sign * kInf;
      throw std::invalid_argument("lp parse: expected a number, got '" + word + "'");
    }
    return sign * tokens_[pos_++].value;
  }

  void parse_bounds() {
    while (!at_end()) {
      const Token& tok = tokens_[pos_];
      if (tok.kind == Token::Name && is_section_word(tok.text) && lowered(tok.text) != "free") {
        if (lowered(tok.text) != "free") return;
      }
      // Forms: "l <= x <= u", "x <= u", "x >= l", "x = v", "x free".
      if (tok.kind == Token::Name && pos_ + 1 < tokens_.size() &&
          lowered(tokens_[pos_ + 1].text) == "free") {
        const int col = column(tok.text);
        bounds_[col] = {-kInf, kInf};
        pos_ += 2;
        continue;
      }
      if (tok.kind == Token::Name && !is_section_word(tok.text)) {
        const int col = column(tok.text);
        ++pos_;
        if (at_end() || tokens_[pos_].kind != Token::Op)
          throw std::invalid_argument("lp parse: malformed bound");
        const std::string op = tokens_[pos_++].text;
        const double v = signed_number();
        auto [lo, hi] = bounds_.count(col) ? bounds_[col] : std::make_pair(0.0, kInf);
        if (op == "<=") hi = v;
        else if (op == ">=") lo = v;
        else lo = hi = v;
        bounds_[col] = {lo, hi};
        continue;
      }
      if (tok.kind == Token::Number || tok.kind == Token::Op ||
          (tok.kind == Token::Name && lowered(tok.text) == "inf")) {
        const double lo = signed_number();
        if (at_end() || tokens_[pos_].kind != Token::Op || tokens_[pos_].text != "<=")
          throw std::invalid_argument("lp parse: malformed bound");
        ++pos_;
        if (at_end() || tokens_[pos_].kind != Token::Name)
          throw std::invalid_argument("lp parse: malformed bound");
        const int col = column(tokens_[pos_++].text);
        double hi = bounds_.count(col) ? bounds_[col].second : kInf;
        if (!at_end() && tokens_[pos_].kind == Token::Op && tokens_[pos_].text == "<=") {
          ++pos_;
          hi = signed_number();
        }
        bounds_[col] = {lo, hi};
        continue;
      }
      return;
    }
  }

  void parse_integers(bool binary) {
    while (!at_end() && tokens_[pos_].kind == Token::Name && !is_section_word(tokens_[pos_].text)) {
      const int col = column(tokens_[pos_++].text);
      integer_[col] = true;
      if (binary && !bounds_.count(col)) bounds_[col] = {0.0, 1.0};
    }
  }

  void finish() {
    for (const auto& [col, b] : bounds_) {
      lp_.cols[col].lower = b.first;
      lp_.cols[col].upper = b.second;
    }
    for (const auto& [col, flag] : integer_) lp_.cols[col].integer = flag;
    // Rebuild through the public interface so the name index is populated.
    LinearProgram rebuilt;
    rebuilt.name = lp_.name;
    rebuilt.maximize = lp_.maximize;
    for (const auto& col : lp_.cols)
      rebuilt.add_column(col.name, col.lower, col.upper, col.objective, col.integer);
    for (const auto& row : lp_.rows) rebuilt.add_row(row.name, row.terms, row.sense, row.rhs);
    lp_ = std::move(rebuilt);
  }
};

}  // namespace

LinearProgram parse_lp(std::istream& in) {
  LpParser parser(tokenize(in));
  return parser.parse();
}

LinearProgram parse_lp_string(const std::string& text) {
  std::istringstream in(text);
  return parse_lp(in);
}

}  // namespace btiepi
