#include "trifuzz/parser.hpp"

#include <cctype>
#include <charconv>
#include <deque>
#include <fstream>
#include <map>
#include <sstream>

namespace trifuzz {

namespace {

struct Token {
  std::string text;
  int line;
  int col;
};

// Whitespace-separated tokens over the whole input; '#' comments run to end
// of line; ':' '?' '=' always stand alone so "b0:" and "br r1 ? a : b"
// tokenize uniformly. Every construct has fixed arity, so newlines carry
// no meaning beyond comment termination.
std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto bump = [&](char c) {
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') bump(text[i++]);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      bump(c);
      ++i;
      continue;
    }
    if (c == ':' || c == '?' || c == '=') {
      out.push_back({std::string(1, c), line, col});
      bump(c);
      ++i;
      continue;
    }
    int start_col = col;
    std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) &&
           text[i] != ':' && text[i] != '?' && text[i] != '=' && text[i] != '#') {
      bump(text[i]);
      ++i;
    }
    out.push_back({std::string(text.substr(start, i - start)), line, start_col});
  }
  return out;
}

struct PendingBranch {
  std::uint32_t fn;
  std::uint32_t blk;
  int which;  // 0 jump/true target, 2 false target, 3 return block
  std::string label;
  int line;
};

struct PendingCall {
  std::uint32_t fn;
  std::uint32_t blk;
  std::string callee;
  int line;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(tokenize(text)) {}

  TargetProgram run() {
    while (!at_end()) dispatch();
    if (in_fn_) fail_here("unterminated function (missing '}')");
    finalize();
    return std::move(prog_);
  }

 private:
  [[noreturn]] void fail(int line, int col, const std::string& msg) {
    throw ParseError(line, col, msg);
  }
  [[noreturn]] void fail_here(const std::string& msg) {
    if (pos_ < toks_.size()) fail(toks_[pos_].line, toks_[pos_].col, msg);
    if (!toks_.empty()) fail(toks_.back().line, toks_.back().col + 1, msg);
    fail(1, 1, msg);
  }

  bool at_end() const { return pos_ >= toks_.size(); }
  const Token& peek() {
    if (at_end()) fail_here("unexpected end of input");
    return toks_[pos_];
  }
  const Token& peek2() {
    if (pos_ + 1 >= toks_.size()) fail_here("unexpected end of input");
    return toks_[pos_ + 1];
  }
  const Token& take() {
    const Token& t = peek();
    ++pos_;
    return t;
  }
  void expect(const std::string& what) {
    const Token& t = take();
    if (t.text != what)
      fail(t.line, t.col, "expected '" + what + "', got '" + t.text + "'");
  }

  std::uint64_t take_number() {
    const Token& t = take();
    const char* b = t.text.data();
    const char* e = b + t.text.size();
    if (t.text.size() > 2 && t.text[0] == '0' && (t.text[1] == 'x' || t.text[1] == 'X')) {
      std::uint64_t uv = 0;
      auto r = std::from_chars(b + 2, e, uv, 16);
      if (r.ec != std::errc() || r.ptr != e)
        fail(t.line, t.col, "bad number '" + t.text + "'");
      return uv;
    }
    std::int64_t v = 0;
    auto r = std::from_chars(b, e, v, 10);
    if (r.ec != std::errc() || r.ptr != e)
      fail(t.line, t.col, "bad number '" + t.text + "'");
    return static_cast<std::uint64_t>(v);
  }

  bool looks_like_number(const Token& t) const {
    char c = t.text[0];
    return std::isdigit(static_cast<unsigned char>(c)) || c == '-';
  }
  bool looks_like_reg(const Token& t) const {
    return t.text.size() > 1 && t.text[0] == 'r' &&
           std::isdigit(static_cast<unsigned char>(t.text[1]));
  }

  std::uint8_t take_reg() {
    const Token& t = take();
    if (!looks_like_reg(t)) fail(t.line, t.col, "expected register, got '" + t.text + "'");
    int idx = 0;
    auto r = std::from_chars(t.text.data() + 1, t.text.data() + t.text.size(), idx);
    if (r.ec != std::errc() || r.ptr != t.text.data() + t.text.size() || idx < 0)
      fail(t.line, t.col, "bad register '" + t.text + "'");
    if (idx >= static_cast<int>(prog_.reg_count))
      fail(t.line, t.col,
           "register r" + std::to_string(idx) + " out of range (regs " +
               std::to_string(prog_.reg_count) + ")");
    return static_cast<std::uint8_t>(idx);
  }

  Operand take_operand() {
    const Token& t = peek();
    Operand op;
    if (looks_like_reg(t)) {
      op.imm = false;
      op.reg = take_reg();
    } else if (looks_like_number(t)) {
      op.imm = true;
      op.value = take_number();
    } else {
      fail(t.line, t.col, "expected register or number, got '" + t.text + "'");
    }
    return op;
  }

  std::uint16_t take_buffer() {
    const Token& t = take();
    for (std::size_t i = 0; i < prog_.buffers.size(); ++i)
      if (prog_.buffers[i].first == t.text) return static_cast<std::uint16_t>(i);
    fail(t.line, t.col, "undefined buffer '" + t.text + "'");
  }

  void dispatch() {
    const Token& head = peek();
    if (!in_fn_) {
      if (head.text == "input") {
        take();
        prog_.input_len = static_cast<std::uint32_t>(take_number());
      } else if (head.text == "regs") {
        take();
        std::uint64_t n = take_number();
        if (n == 0 || n > 256) fail(head.line, head.col, "regs must be in 1..256");
        prog_.reg_count = static_cast<std::uint32_t>(n);
      } else if (head.text == "buf") {
        take();
        std::string name = take().text;
        std::uint64_t size = take_number();
        if (size == 0) fail(head.line, head.col, "buffer size must be positive");
        prog_.buffers.emplace_back(name, static_cast<std::uint32_t>(size));
      } else if (head.text == "entry") {
        take();
        entry_name_ = take().text;
      } else if (head.text == "fn") {
        take();
        start_function();
      } else {
        fail(head.line, head.col, "unexpected '" + head.text + "' at top level");
      }
      return;
    }

    if (head.text == "}") {
      take();
      end_function(head.line);
      return;
    }
    // Block header: "<label> :", optionally followed by "lines <k>".
    if (pos_ + 1 < toks_.size() && peek2().text == ":" && !looks_like_reg(head)) {
      std::string label = take().text;
      expect(":");
      start_block(label, head.line, head.col);
      if (!at_end() && peek().text == "lines") {
        take();
        std::uint64_t n = take_number();
        if (n == 0) fail(head.line, head.col, "lines must be at least 1");
        cur_block().line_count = static_cast<std::uint32_t>(n);
        explicit_lines_ = true;
      }
      return;
    }
    parse_statement();
  }

  void start_function() {
    const Token& name = take();
    if (fn_index_.count(name.text))
      fail(name.line, name.col, "duplicate function '" + name.text + "'");
    expect("{");
    fn_index_[name.text] = static_cast<std::uint32_t>(prog_.functions.size());
    prog_.functions.push_back(Function{name.text, {}});
    in_fn_ = true;
    block_open_ = false;
    block_index_.clear();
  }

  void end_function(int line) {
    if (block_open_) fail(line, 1, "block '" + cur_block().label + "' has no terminator");
    if (prog_.functions.back().blocks.empty())
      fail(line, 1, "function '" + prog_.functions.back().name + "' has no blocks");
    fn_block_labels_[prog_.functions.size() - 1] = block_index_;
    in_fn_ = false;
  }

  Function& cur_fn() { return prog_.functions.back(); }
  BasicBlock& cur_block() { return cur_fn().blocks.back(); }

  void start_block(const std::string& label, int line, int col) {
    if (block_open_)
      fail(line, col, "block '" + cur_block().label + "' has no terminator");
    if (block_index_.count(label)) fail(line, col, "duplicate block '" + label + "'");
    block_index_[label] = static_cast<std::uint32_t>(cur_fn().blocks.size());
    cur_fn().blocks.push_back(BasicBlock{label, {}, {}, 1});
    block_open_ = true;
    explicit_lines_ = false;
  }

  void finish_block() {
    if (!explicit_lines_) {
      auto n = static_cast<std::uint32_t>(cur_block().instructions.size());
      cur_block().line_count = n > 0 ? n : 1;
    }
    block_open_ = false;
  }

  void pend_target(int which, const Token& label) {
    pending_branches_.push_back({static_cast<std::uint32_t>(prog_.functions.size() - 1),
                                 static_cast<std::uint32_t>(cur_fn().blocks.size() - 1),
                                 which, label.text, label.line});
  }

  void parse_statement() {
    const Token& head = peek();
    if (!block_open_) fail(head.line, head.col, "statement outside a block");

    static const std::map<std::string, TermKind> term_heads = {
        {"jmp", TermKind::Jump},  {"br", TermKind::CondBranch},
        {"call", TermKind::Call}, {"ret", TermKind::Return},
        {"halt", TermKind::Halt}, {"crash", TermKind::Crash},
    };
    auto it = term_heads.find(head.text);
    if (it != term_heads.end()) {
      parse_terminator(it->second);
      return;
    }
    parse_instruction();
  }

  void parse_terminator(TermKind kind) {
    take();
    Terminator t;
    t.kind = kind;
    switch (kind) {
      case TermKind::Jump:
        pend_target(0, take());
        break;
      case TermKind::CondBranch: {
        t.cond_reg = take_reg();
        expect("?");
        pend_target(0, take());
        expect(":");
        pend_target(2, take());
        break;
      }
      case TermKind::Call: {
        const Token& callee = take();
        pending_calls_.push_back({static_cast<std::uint32_t>(prog_.functions.size() - 1),
                                  static_cast<std::uint32_t>(cur_fn().blocks.size() - 1),
                                  callee.text, callee.line});
        pend_target(3, take());
        break;
      }
      case TermKind::Return:
      case TermKind::Halt:
        break;
      case TermKind::Crash: {
        const Token& k = take();
        if (k.text == "div0")
          t.crash_kind = CrashKind::DivByZero;
        else if (k.text == "assert")
          t.crash_kind = CrashKind::AssertFail;
        else if (k.text == "overflow")
          t.crash_kind = CrashKind::BufOverflow;
        else
          fail(k.line, k.col, "unknown crash kind '" + k.text + "'");
        break;
      }
    }
    cur_block().term = t;
    finish_block();
  }

  void parse_instruction() {
    const Token& head = peek();
    static const std::map<std::string, Opcode> binops = {
        {"add", Opcode::Add},      {"sub", Opcode::Sub},    {"mul", Opcode::Mul},
        {"div", Opcode::DivU},     {"mod", Opcode::ModU},   {"and", Opcode::And},
        {"or", Opcode::Or},        {"xor", Opcode::Xor},    {"shl", Opcode::Shl},
        {"shr", Opcode::Shr},      {"cmpeq", Opcode::CmpEq},{"cmpne", Opcode::CmpNe},
        {"cmplt", Opcode::CmpLtS}, {"cmple", Opcode::CmpLeS},
        {"cmpult", Opcode::CmpLtU},{"cmpule", Opcode::CmpLeU},
    };

    Instruction ins;
    if (head.text == "store") {
      take();
      ins.op = Opcode::BufWrite;
      ins.buffer = take_buffer();
      ins.a = take_operand();
      ins.b = take_operand();
      cur_block().instructions.push_back(ins);
      return;
    }
    if (head.text == "assert") {
      take();
      ins.op = Opcode::Assert;
      ins.a.imm = false;
      ins.a.reg = take_reg();
      cur_block().instructions.push_back(ins);
      return;
    }

    // "r<d> = <op> ..."
    ins.dst = take_reg();
    expect("=");
    const Token& op = take();
    if (op.text == "input") {
      ins.op = Opcode::LoadInput;
      const Token& idx_tok = peek();
      std::uint64_t idx = take_number();
      if (idx >= prog_.input_len)
        fail(idx_tok.line, idx_tok.col,
             "input index " + std::to_string(idx) + " out of range (input " +
                 std::to_string(prog_.input_len) + ")");
      ins.a.imm = true;
      ins.a.value = idx;
    } else if (op.text == "const") {
      ins.op = Opcode::Const;
      ins.a.imm = true;
      ins.a.value = take_number();
    } else if (op.text == "load") {
      ins.op = Opcode::BufRead;
      ins.buffer = take_buffer();
      ins.a = take_operand();
    } else {
      auto it = binops.find(op.text);
      if (it == binops.end()) fail(op.line, op.col, "unknown opcode '" + op.text + "'");
      ins.op = it->second;
      ins.a = take_operand();
      ins.b = take_operand();
    }
    cur_block().instructions.push_back(ins);
  }

  void finalize() {
    if (prog_.functions.empty()) fail(1, 1, "no functions defined");

    auto eit = fn_index_.find(entry_name_);
    if (eit == fn_index_.end())
      fail(1, 1, "entry function '" + entry_name_ + "' not defined");
    prog_.entry = eit->second;

    for (const auto& pb : pending_branches_) {
      const auto& labels = fn_block_labels_[pb.fn];
      auto it = labels.find(pb.label);
      if (it == labels.end())
        fail(pb.line, 1,
             "undefined block '" + pb.label + "' in function '" +
                 prog_.functions[pb.fn].name + "'");
      Terminator& t = prog_.functions[pb.fn].blocks[pb.blk].term;
      switch (pb.which) {
        case 0: t.target = it->second; break;
        case 2: t.alt_target = it->second; break;
        case 3: t.return_block = it->second; break;
      }
    }
    for (const auto& pc : pending_calls_) {
      auto it = fn_index_.find(pc.callee);
      if (it == fn_index_.end())
        fail(pc.line, 1, "undefined function '" + pc.callee + "'");
      prog_.functions[pc.fn].blocks[pc.blk].term.callee = it->second;
    }

    for (const auto& f : prog_.functions)
      for (const auto& b : f.blocks)
        if (b.term.kind == TermKind::CondBranch && b.term.target == b.term.alt_target)
          fail(1, 1,
               "block '" + f.name + "." + b.label + "' branches to the same block twice");

    for (const auto& f : prog_.functions) {
      std::vector<std::uint8_t> seen(f.blocks.size(), 0);
      std::deque<std::uint32_t> work{0};
      seen[0] = 1;
      while (!work.empty()) {
        std::uint32_t b = work.front();
        work.pop_front();
        const Terminator& t = f.blocks[b].term;
        auto visit = [&](std::uint32_t n) {
          if (!seen[n]) {
            seen[n] = 1;
            work.push_back(n);
          }
        };
        switch (t.kind) {
          case TermKind::Jump: visit(t.target); break;
          case TermKind::CondBranch:
            visit(t.target);
            visit(t.alt_target);
            break;
          case TermKind::Call: visit(t.return_block); break;
          default: break;
        }
      }
      for (std::size_t i = 0; i < f.blocks.size(); ++i)
        if (!seen[i])
          fail(1, 1,
               "block '" + f.name + "." + f.blocks[i].label +
                   "' is unreachable from the function entry");
    }

    prog_.rebuild_gids();
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;

  TargetProgram prog_;
  std::string entry_name_ = "main";
  bool in_fn_ = false;
  bool block_open_ = false;
  bool explicit_lines_ = false;
  std::map<std::string, std::uint32_t> fn_index_;
  std::map<std::string, std::uint32_t> block_index_;
  std::map<std::uint64_t, std::map<std::string, std::uint32_t>> fn_block_labels_;
  std::vector<PendingBranch> pending_branches_;
  std::vector<PendingCall> pending_calls_;
};

}  // namespace

TargetProgram parse_program(std::string_view text) { return Parser(text).run(); }

TargetProgram parse_program_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open target file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_program(ss.str());
}

}  // namespace trifuzz
