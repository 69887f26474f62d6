#include "distaut/transforms.hpp"

#include <algorithm>

#include "distaut/errors.hpp"

namespace distaut {

namespace {

std::shared_ptr<const MachineRef> transform_ref(const std::string& name,
                                                std::vector<const Machine*> inputs,
                                                std::map<std::string, std::int64_t> params = {}) {
  auto ref = std::make_shared<MachineRef>();
  ref->kind = "transform";
  ref->name = name;
  ref->params = std::move(params);
  for (const auto* m : inputs) {
    if (m->origin()) {
      ref->inputs.push_back(m->origin());
    } else {
      auto in = std::make_shared<MachineRef>();
      in->kind = "inline";
      in->machine = std::make_shared<const Machine>(*m);
      ref->inputs.push_back(in);
    }
  }
  return ref;
}

std::string tuple_name(std::initializer_list<std::string> parts) {
  std::string out = "(";
  bool first = true;
  for (const auto& p : parts) {
    if (!first) out += ",";
    first = false;
    out += p;
  }
  return out + ")";
}

// Adds a saturating count to a multiset over the source machine's states.
void add_capped(BoundedMultiset& p, StateId s, int n) { p.add(s, n); }

// ---- synchronizer -------------------------------------------------------

struct Triple {
  std::size_t q;
  Triple(std::size_t states) : q(states) {}
  StateId encode(StateId past, StateId cur, int phase) const {
    return static_cast<StateId>((past * q + cur) * 3 + static_cast<std::size_t>(phase));
  }
  StateId past(StateId s) const { return static_cast<StateId>(s / 3 / q); }
  StateId cur(StateId s) const { return static_cast<StateId>(s / 3 % q); }
  int phase(StateId s) const { return s % 3; }
};

}  // namespace

Machine synchronize(const Machine& m) {
  const auto nq = m.state_count();
  if (3 * nq * nq > 65535) throw TooLarge("synchronize: too many states");
  Triple t(nq);
  MachineDef def;
  def.name = "synchronize(" + m.name() + ")";
  def.alphabet = m.alphabet();
  def.beta = m.beta();
  for (std::size_t past = 0; past < nq; ++past) {
    for (std::size_t cur = 0; cur < nq; ++cur) {
      for (int i = 0; i < 3; ++i) {
        const auto s = t.encode(static_cast<StateId>(past), static_cast<StateId>(cur), i);
        def.states.push_back(tuple_name({m.state_name(static_cast<StateId>(past)),
                                         m.state_name(static_cast<StateId>(cur)),
                                         std::to_string(i)}));
        if (m.is_accepting(static_cast<StateId>(past)) && m.is_accepting(static_cast<StateId>(cur))) {
          def.accepting.push_back(s);
        }
        if (m.is_rejecting(static_cast<StateId>(past)) && m.is_rejecting(static_cast<StateId>(cur))) {
          def.rejecting.push_back(s);
        }
      }
    }
  }
  for (auto q : m.init()) def.init.push_back(t.encode(q, q, 0));
  def.delta = std::make_shared<ClosureTransition>(
      [m, t](StateId s, const BoundedMultiset& nb) -> StateId {
        const int i = t.phase(s);
        const int behind = (i + 2) % 3;
        const int ahead = (i + 1) % 3;
        BoundedMultiset view(m.beta());
        for (const auto& e : nb.entries()) {
          const int j = t.phase(e.state);
          if (j == behind) return s;
          add_capped(view, j == i ? t.cur(e.state) : t.past(e.state), e.count);
        }
        (void)ahead;
        const auto cur = t.cur(s);
        return t.encode(cur, m.next(cur, view), (i + 1) % 3);
      });
  def.origin = transform_ref("synchronize", {&m});
  return Machine(std::move(def));
}

// ---- liberal-strong -> exclusive-strong ---------------------------------

Machine liberal_strong_to_exclusive_strong(const Machine& m) {
  const auto nq = m.state_count();
  if (6 * nq * nq > 65535) throw TooLarge("lib2excl-strong: too many states");
  // (past, cur, round, flag) -> ((past*nq + cur)*3 + round)*2 + flag
  auto enc = [nq](std::size_t past, std::size_t cur, int round, int flag) {
    return static_cast<StateId>(((past * nq + cur) * 3 + static_cast<std::size_t>(round)) * 2 +
                                static_cast<std::size_t>(flag));
  };
  auto flag = [](StateId s) { return s % 2; };
  auto round = [](StateId s) { return s / 2 % 3; };
  auto cur = [nq](StateId s) { return static_cast<StateId>(s / 6 % nq); };
  auto past = [nq](StateId s) { return static_cast<StateId>(s / 6 / nq); };

  MachineDef def;
  def.name = "lib2excl(" + m.name() + ")";
  def.alphabet = m.alphabet();
  def.beta = m.beta();
  for (std::size_t p = 0; p < nq; ++p) {
    for (std::size_t c = 0; c < nq; ++c) {
      for (int r = 0; r < 3; ++r) {
        for (int f = 0; f < 2; ++f) {
          const auto s = enc(p, c, r, f);
          def.states.push_back(tuple_name({m.state_name(static_cast<StateId>(p)),
                                           m.state_name(static_cast<StateId>(c)),
                                           std::to_string(r), f ? "T" : "_"}));
          if (m.is_accepting(static_cast<StateId>(p)) && m.is_accepting(static_cast<StateId>(c))) {
            def.accepting.push_back(s);
          }
          if (m.is_rejecting(static_cast<StateId>(p)) && m.is_rejecting(static_cast<StateId>(c))) {
            def.rejecting.push_back(s);
          }
        }
      }
    }
  }
  for (auto q : m.init()) def.init.push_back(enc(q, q, 0, 0));
  def.delta = std::make_shared<ClosureTransition>(
      [=](StateId s, const BoundedMultiset& nb) -> StateId {
        const int i = round(s);
        const int behind = (i + 2) % 3;
        const int ahead = (i + 1) % 3;
        bool any_behind = false;
        bool any_ahead = false;
        for (const auto& e : nb.entries()) {
          any_behind = any_behind || round(e.state) == behind;
          any_ahead = any_ahead || round(e.state) == ahead;
        }
        if (flag(s) == 0) {
          if (!any_ahead) return static_cast<StateId>(s + 1);  // raise the flag
          if (any_behind) return s;
          return enc(cur(s), cur(s), ahead, 0);
        }
        if (any_behind) return s;
        BoundedMultiset view(m.beta());
        for (const auto& e : nb.entries()) {
          add_capped(view, round(e.state) == i ? cur(e.state) : past(e.state), e.count);
        }
        return enc(cur(s), m.next(cur(s), view), ahead, 0);
      });
  def.origin = transform_ref("lib2excl-strong", {&m});
  return Machine(std::move(def));
}

// ---- exclusive-strong -> liberal-strong ---------------------------------

Machine exclusive_strong_to_liberal_strong(const Machine& m) {
  const auto nq = m.state_count();
  if (nq + nq * nq > 65535) throw TooLarge("excl2lib-strong: too many states");
  // q < nq is a plain state; nq + a*nq + b is the intermediate <a,b>.
  auto pair = [nq](std::size_t a, std::size_t b) { return static_cast<StateId>(nq + a * nq + b); };
  const bool halting = check_halting(m).status == HaltingStatus::Halting;

  MachineDef def;
  def.name = "excl2lib(" + m.name() + ")";
  def.alphabet = m.alphabet();
  def.beta = m.beta();
  def.init = m.init();
  std::vector<StateId> traps;
  for (std::size_t q = 0; q < nq; ++q) {
    def.states.push_back(m.state_name(static_cast<StateId>(q)));
    if (m.is_accepting(static_cast<StateId>(q))) def.accepting.push_back(static_cast<StateId>(q));
    if (m.is_rejecting(static_cast<StateId>(q))) def.rejecting.push_back(static_cast<StateId>(q));
    if (halting && (m.is_accepting(static_cast<StateId>(q)) || m.is_rejecting(static_cast<StateId>(q)))) {
      traps.push_back(static_cast<StateId>(q));
    }
  }
  for (std::size_t a = 0; a < nq; ++a) {
    for (std::size_t b = 0; b < nq; ++b) {
      const auto s = pair(a, b);
      def.states.push_back("<" + m.state_name(static_cast<StateId>(a)) + "," +
                           m.state_name(static_cast<StateId>(b)) + ">");
      const bool acc = m.is_accepting(static_cast<StateId>(a)) && m.is_accepting(static_cast<StateId>(b));
      const bool rej = m.is_rejecting(static_cast<StateId>(a)) && m.is_rejecting(static_cast<StateId>(b));
      if (acc) def.accepting.push_back(s);
      if (rej) def.rejecting.push_back(s);
      // Unreachable when m halts, but Y' and N' must still be closed.
      if (halting && (acc || rej)) traps.push_back(s);
    }
  }
  def.delta = std::make_shared<ClosureTransition>(
      [m, nq](StateId s, const BoundedMultiset& nb) -> StateId {
        bool intermediate = false;
        for (const auto& e : nb.entries()) intermediate = intermediate || e.state >= nq;
        if (s < nq) {
          if (intermediate) return s;
          // No intermediate neighbor, so nb is a multiset over Q already.
          return static_cast<StateId>(nq + s * nq + m.next(s, nb));
        }
        const auto a = static_cast<StateId>((s - nq) / nq);
        const auto b = static_cast<StateId>((s - nq) % nq);
        return intermediate ? a : b;
      },
      traps);
  def.origin = transform_ref("excl2lib-strong", {&m});
  return Machine(std::move(def));
}

// ---- exclusive-weak -> synchronous-weak ---------------------------------

Machine exclusive_weak_to_synchronous_weak(const Machine& m) {
  const auto nq = m.state_count();
  if (2 * nq * nq > 65535) throw TooLarge("exclweak2sync: too many states");
  auto enc = [nq](std::size_t a, std::size_t b, int bit) {
    return static_cast<StateId>((a * nq + b) * 2 + static_cast<std::size_t>(bit));
  };
  MachineDef def;
  def.name = "exclweak2sync(" + m.name() + ")";
  def.alphabet = m.alphabet();
  def.beta = m.beta();
  for (std::size_t a = 0; a < nq; ++a) {
    for (std::size_t b = 0; b < nq; ++b) {
      for (int bit = 0; bit < 2; ++bit) {
        const auto s = enc(a, b, bit);
        def.states.push_back(tuple_name({m.state_name(static_cast<StateId>(a)),
                                         m.state_name(static_cast<StateId>(b)),
                                         std::to_string(bit)}));
        if (m.is_accepting(static_cast<StateId>(a)) && m.is_accepting(static_cast<StateId>(b))) {
          def.accepting.push_back(s);
        }
        if (m.is_rejecting(static_cast<StateId>(a)) && m.is_rejecting(static_cast<StateId>(b))) {
          def.rejecting.push_back(s);
        }
      }
    }
  }
  for (auto q : m.init()) def.init.push_back(enc(q, q, 0));
  def.delta = std::make_shared<ClosureTransition>(
      [m, nq, enc](StateId s, const BoundedMultiset& nb) -> StateId {
        const auto a = static_cast<StateId>(s / 2 / nq);
        const auto b = static_cast<StateId>(s / 2 % nq);
        const int bit = s % 2;
        BoundedMultiset view(m.beta());
        for (const auto& e : nb.entries()) {
          const auto ea = static_cast<StateId>(e.state / 2 / nq);
          const auto eb = static_cast<StateId>(e.state / 2 % nq);
          add_capped(view, bit == 0 ? eb : ea, e.count);
        }
        if (bit == 0) return enc(m.next(a, view), b, 1);
        return enc(a, m.next(b, view), 0);
      });
  def.origin = transform_ref("exclweak2sync", {&m});
  return Machine(std::move(def));
}

// ---- product ------------------------------------------------------------

Machine product(const Machine& a, const Machine& b, Combinator how) {
  auto sorted = [](std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  if (sorted(a.alphabet()) != sorted(b.alphabet())) {
    throw DomainError("product: machines have different alphabets");
  }
  const auto na = a.state_count();
  const auto nb = b.state_count();
  if (na * nb > 65535) throw TooLarge("product: too many states");
  MachineDef def;
  const char* tag = how == Combinator::And ? "and" : how == Combinator::Or ? "or" : "left";
  def.name = std::string("product-") + tag + "(" + a.name() + "," + b.name() + ")";
  def.alphabet = a.alphabet();
  def.beta = std::max(a.beta(), b.beta());
  for (std::size_t x = 0; x < na; ++x) {
    for (std::size_t y = 0; y < nb; ++y) {
      const auto s = static_cast<StateId>(x * nb + y);
      const auto qx = static_cast<StateId>(x);
      const auto qy = static_cast<StateId>(y);
      def.states.push_back(tuple_name({a.state_name(qx), b.state_name(qy)}));
      bool acc = false;
      bool rej = false;
      switch (how) {
        case Combinator::And:
          acc = a.is_accepting(qx) && b.is_accepting(qy);
          rej = !acc && (a.is_rejecting(qx) || b.is_rejecting(qy));
          break;
        case Combinator::Or:
          acc = a.is_accepting(qx) || b.is_accepting(qy);
          rej = !acc && a.is_rejecting(qx) && b.is_rejecting(qy);
          break;
        case Combinator::Left:
          acc = a.is_accepting(qx);
          rej = a.is_rejecting(qx);
          break;
      }
      if (acc) def.accepting.push_back(s);
      if (rej) def.rejecting.push_back(s);
    }
  }
  for (const auto& label : def.alphabet) {
    def.init.push_back(static_cast<StateId>(a.init_state(label) * nb + b.init_state(label)));
  }
  def.delta = std::make_shared<ClosureTransition>(
      [a, b, nb](StateId s, const BoundedMultiset& p) -> StateId {
        const auto x = static_cast<StateId>(s / nb);
        const auto y = static_cast<StateId>(s % nb);
        BoundedMultiset pa(a.beta());
        BoundedMultiset pb(b.beta());
        for (const auto& e : p.entries()) {
          pa.add(static_cast<StateId>(e.state / nb), e.count);
          pb.add(static_cast<StateId>(e.state % nb), e.count);
        }
        return static_cast<StateId>(a.next(x, pa) * nb + b.next(y, pb));
      });
  def.origin = transform_ref("product", {&a, &b}, {{"combinator", static_cast<int>(how)}});
  return Machine(std::move(def));
}

// ---- de-counting for bounded degree ---------------------------------------

Machine decount_bounded_degree(const Machine& m, std::size_t k) {
  if (k < 1) throw DomainError("decount: degree bound must be at least 1");
  const auto nq = m.state_count();
  const auto colors = k * k + 1;
  if (6 * colors * nq * nq > 65535) throw TooLarge("decount: too many states");
  struct Tuple5 {
    std::size_t q0, q, p, fc, sc;
  };
  auto enc = [nq, colors](const Tuple5& t) {
    return static_cast<StateId>((((t.q0 * nq + t.q) * 3 + t.p) * colors + t.fc) * 2 + t.sc);
  };
  auto dec = [nq, colors](StateId s) {
    Tuple5 t;
    std::size_t x = s;
    t.sc = x % 2;
    x /= 2;
    t.fc = x % colors;
    x /= colors;
    t.p = x % 3;
    x /= 3;
    t.q = x % nq;
    t.q0 = x / nq;
    return t;
  };

  MachineDef def;
  def.name = "decount" + std::to_string(k) + "(" + m.name() + ")";
  def.alphabet = m.alphabet();
  def.beta = 1;
  for (std::size_t q0 = 0; q0 < nq; ++q0) {
    for (std::size_t q = 0; q < nq; ++q) {
      for (std::size_t p = 0; p < 3; ++p) {
        for (std::size_t fc = 0; fc < colors; ++fc) {
          for (std::size_t sc = 0; sc < 2; ++sc) {
            const auto s = enc({q0, q, p, fc, sc});
            def.states.push_back(tuple_name(
                {m.state_name(static_cast<StateId>(q0)), m.state_name(static_cast<StateId>(q)),
                 std::to_string(p), std::to_string(fc), std::to_string(sc)}));
            if (m.is_accepting(static_cast<StateId>(q))) def.accepting.push_back(s);
            if (m.is_rejecting(static_cast<StateId>(q))) def.rejecting.push_back(s);
          }
        }
      }
    }
  }
  for (auto q : m.init()) def.init.push_back(enc({q, q, 0, 0, 0}));
  def.delta = std::make_shared<ClosureTransition>(
      [m, enc, dec, colors](StateId s, const BoundedMultiset& nb) -> StateId {
        auto me = dec(s);
        bool phase[3] = {false, false, false};
        for (const auto& e : nb.entries()) phase[dec(e.state).p] = true;
        const auto next_fc = (me.fc + 1) % colors;
        switch (me.p) {
          case 0:
            if (phase[2]) return s;                                  // 0.a
            me.q = me.q0;                                            // 0.b
            me.p = 1;
            return enc(me);
          case 1:
            if (phase[0]) {                                          // 1.a
              me.fc = next_fc;
              return enc(me);
            }
            if (!phase[2]) {                                         // 1.b
              me.p = 2;
              me.fc = next_fc;
              return enc(me);
            }
            me.p = 2;                                                // 1.c
            return enc(me);
          default: {
            if (phase[1]) {                                          // 2.a
              me.fc = next_fc;
              return enc(me);
            }
            if (phase[0]) {                                          // 2.d
              me.p = 0;
              return enc(me);
            }
            // All neighbors in phase 2: look for a first color carried with
            // two different second colors inside the closed neighborhood.
            std::vector<int> seen(colors, -1);
            seen[me.fc] = static_cast<int>(me.sc);
            bool violation = false;
            for (const auto& e : nb.entries()) {
              const auto t = dec(e.state);
              if (seen[t.fc] == -1) seen[t.fc] = static_cast<int>(t.sc);
              else if (seen[t.fc] != static_cast<int>(t.sc)) violation = true;
            }
            if (violation) {                                         // 2.c
              me.p = 0;
              return enc(me);
            }
            BoundedMultiset view(m.beta());                          // 2.b
            for (const auto& e : nb.entries()) view.add(static_cast<StateId>(dec(e.state).q), 1);
            me.q = m.next(static_cast<StateId>(me.q), view);
            me.sc = 1 - me.sc;
            return enc(me);
          }
        }
      });
  def.origin = transform_ref("decount", {&m}, {{"k", static_cast<std::int64_t>(k)}});
  return Machine(std::move(def));
}

}  // namespace distaut
