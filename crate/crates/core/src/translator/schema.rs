//! The fixed rule schema of the translation: deduction rules, overriding
//! rules and defeasible application rules.

use std::sync::OnceLock;

use crate::program::{Literal, Rule, Term};

use super::text::parse_asp_text;

/// Deduction rules for strict reasoning, including negative consequences.
const DEDUCTION: &[(&str, &str)] = &[
    ("pdlr-instd", "instd(X,Z) :- insta(X,Z)."),
    ("pdlr-tripled", "tripled(X,R,Y) :- triplea(X,R,Y)."),
    ("pdlr-subc", "instd(X,Z) :- subClass(Y,Z), instd(X,Y)."),
    ("pdlr-supnot", "-instd(X,Z) :- supNot(Y,Z), instd(X,Y)."),
    ("pdlr-subex", "instd(X,Z) :- subEx(V,Z), tripled(X,V,X1)."),
    (
        "pdlr-supex",
        "tripled(X,R,X1) :- supEx(Y,R,X1), instd(X,Y).",
    ),
    (
        "pdlr-subr",
        "tripled(X,W,X1) :- subRole(V,W), tripled(X,V,X1).",
    ),
    ("pdlr-dis1", "-tripled(X,U,Y) :- dis(U,V), tripled(X,V,Y)."),
    ("pdlr-dis2", "-tripled(X,V,Y) :- dis(U,V), tripled(X,U,Y)."),
    ("pdlr-inv1", "tripled(Y,V,X) :- inv(U,V), tripled(X,U,Y)."),
    ("pdlr-inv2", "tripled(Y,U,X) :- inv(U,V), tripled(X,V,Y)."),
    ("pdlr-irr", "-tripled(X,U,X) :- irr(U), const(X)."),
    ("pdlr-ninstd", "-instd(X,Z) :- -insta(X,Z)."),
    ("pdlr-ntripled", "-tripled(X,R,Y) :- -triplea(X,R,Y)."),
    ("pdlr-nsubc", "-instd(X,Y) :- subClass(Y,Z), -instd(X,Z)."),
    ("pdlr-nsupnot", "-instd(X,Y) :- supNot(Y,Z), instd(X,Z)."),
    (
        "pdlr-nsubex",
        "-tripled(X,V,X1) :- subEx(V,Z), const(X1), -instd(X,Z).",
    ),
    (
        "pdlr-nsupex",
        "-instd(X,Y) :- supEx(Y,R,W), const(X), all_nrel(X,R).",
    ),
    (
        "pdlr-nsubr",
        "-tripled(X,V,X1) :- subRole(V,W), -tripled(X,W,X1).",
    ),
    (
        "pdlr-ninv1",
        "-tripled(Y,V,X) :- inv(U,V), -tripled(X,U,Y).",
    ),
    (
        "pdlr-ninv2",
        "-tripled(Y,U,X) :- inv(U,V), -tripled(X,V,Y).",
    ),
    (
        "pdlr-allnrel1",
        "all_nrel_step(X,R,Y) :- first(Y), -tripled(X,R,Y).",
    ),
    (
        "pdlr-allnrel2",
        "all_nrel_step(X,R,Y) :- all_nrel_step(X,R,Y1), next(Y1,Y), -tripled(X,R,Y).",
    ),
    (
        "pdlr-allnrel3",
        "all_nrel(X,R) :- last(Y), all_nrel_step(X,R,Y).",
    ),
];

/// Overriding rules: conditions under which an axiom instance is an
/// exception. The second entry lists the variables naming the exception
/// subject, which are guarded to named individuals unless exceptions on
/// auxiliary constants are enabled.
const OVERRIDING: &[(&str, &str, &[&str])] = &[
    (
        "ovr-inst",
        "ovr(insta,X,Y) :- def_insta(X,Y), -instd(X,Y).",
        &["X"],
    ),
    (
        "ovr-triple",
        "ovr(triplea,X,R,Y) :- def_triplea(X,R,Y), -tripled(X,R,Y).",
        &["X", "Y"],
    ),
    (
        "ovr-ninst",
        "ovr(ninsta,X,Y) :- def_ninsta(X,Y), instd(X,Y).",
        &["X"],
    ),
    (
        "ovr-ntriple",
        "ovr(ntriplea,X,R,Y) :- def_ntriplea(X,R,Y), tripled(X,R,Y).",
        &["X", "Y"],
    ),
    (
        "ovr-subc",
        "ovr(subClass,X,Y,Z) :- def_subclass(Y,Z), instd(X,Y), -instd(X,Z).",
        &["X"],
    ),
    (
        "ovr-supnot",
        "ovr(supNot,X,Y,Z) :- def_supnot(Y,Z), instd(X,Y), instd(X,Z).",
        &["X"],
    ),
    (
        "ovr-subex",
        "ovr(subEx,X,R,Z) :- def_subex(R,Z), tripled(X,R,W), -instd(X,Z).",
        &["X"],
    ),
    (
        "ovr-supex",
        "ovr(supEx,X,Y,R,W) :- def_supex(Y,R,W), instd(X,Y), all_nrel(X,R).",
        &["X"],
    ),
    (
        "ovr-subr",
        "ovr(subRole,X,Y,R,S) :- def_subr(R,S), tripled(X,R,Y), -tripled(X,S,Y).",
        &["X", "Y"],
    ),
    (
        "ovr-dis",
        "ovr(dis,X,Y,R,S) :- def_dis(R,S), tripled(X,R,Y), tripled(X,S,Y).",
        &["X", "Y"],
    ),
    (
        "ovr-inv1",
        "ovr(inv,X,Y,R,S) :- def_inv(R,S), tripled(X,R,Y), -tripled(Y,S,X).",
        &["X", "Y"],
    ),
    (
        "ovr-inv2",
        "ovr(inv,X,Y,R,S) :- def_inv(R,S), tripled(Y,S,X), -tripled(X,R,Y).",
        &["X", "Y"],
    ),
    (
        "ovr-irr",
        "ovr(irr,X,R) :- def_irr(R), tripled(X,R,X).",
        &["X"],
    ),
];

/// Application rules: defeasible axioms apply wherever they are not
/// overridden.
const APPLICATION: &[(&str, &str)] = &[
    (
        "app-inst",
        "instd(X,Z) :- def_insta(X,Z), not ovr(insta,X,Z).",
    ),
    (
        "app-triple",
        "tripled(X,R,Y) :- def_triplea(X,R,Y), not ovr(triplea,X,R,Y).",
    ),
    (
        "app-subc",
        "instd(X,Z) :- def_subclass(Y,Z), instd(X,Y), not ovr(subClass,X,Y,Z).",
    ),
    (
        "app-supnot",
        "-instd(X,Z) :- def_supnot(Y,Z), instd(X,Y), not ovr(supNot,X,Y,Z).",
    ),
    (
        "app-subex",
        "instd(X,Z) :- def_subex(V,Z), tripled(X,V,X1), not ovr(subEx,X,V,Z).",
    ),
    (
        "app-supex",
        "tripled(X,R,X1) :- def_supex(Y,R,X1), instd(X,Y), not ovr(supEx,X,Y,R,X1).",
    ),
    (
        "app-subr",
        "tripled(X,W,X1) :- def_subr(V,W), tripled(X,V,X1), not ovr(subRole,X,X1,V,W).",
    ),
    (
        "app-dis1",
        "-tripled(X,V,Y) :- def_dis(U,V), tripled(X,U,Y), not ovr(dis,X,Y,U,V).",
    ),
    (
        "app-dis2",
        "-tripled(X,U,Y) :- def_dis(U,V), tripled(X,V,Y), not ovr(dis,X,Y,U,V).",
    ),
    (
        "app-inv1",
        "tripled(Y,V,X) :- def_inv(U,V), tripled(X,U,Y), not ovr(inv,X,Y,U,V).",
    ),
    (
        "app-inv2",
        "tripled(X,U,Y) :- def_inv(U,V), tripled(Y,V,X), not ovr(inv,X,Y,U,V).",
    ),
    (
        "app-irr",
        "-tripled(X,U,X) :- def_irr(U), const(X), not ovr(irr,X,U).",
    ),
    (
        "app-ninst",
        "-instd(X,Z) :- def_ninsta(X,Z), not ovr(ninsta,X,Z).",
    ),
    (
        "app-ntriple",
        "-tripled(X,R,Y) :- def_ntriplea(X,R,Y), not ovr(ntriplea,X,R,Y).",
    ),
    (
        "app-nsubc",
        "-instd(X,Y) :- def_subclass(Y,Z), -instd(X,Z), not ovr(subClass,X,Y,Z).",
    ),
    (
        "app-nsupnot",
        "-instd(X,Y) :- def_supnot(Y,Z), instd(X,Z), not ovr(supNot,X,Y,Z).",
    ),
    (
        "app-nsubex",
        "-tripled(X,V,X1) :- def_subex(V,Z), const(X1), -instd(X,Z), not ovr(subEx,X,V,Z).",
    ),
    (
        "app-nsupex",
        "-instd(X,Y) :- def_supex(Y,R,X1), const(X), all_nrel(X,R), not ovr(supEx,X,Y,R,X1).",
    ),
    (
        "app-nsubr",
        "-tripled(X,V,Y) :- def_subr(V,W), -tripled(X,W,Y), not ovr(subRole,X,Y,V,W).",
    ),
    (
        "app-ninv1",
        "-tripled(Y,V,X) :- def_inv(U,V), -tripled(X,U,Y), not ovr(inv,X,Y,U,V).",
    ),
    (
        "app-ninv2",
        "-tripled(X,U,Y) :- def_inv(U,V), -tripled(Y,V,X), not ovr(inv,X,Y,U,V).",
    ),
];

/// Refutation rules completing the negative consequences: `¬A(a)` holds
/// when adding `A(a)` makes the knowledge base inconsistent, `¬R(a,b)`
/// likewise, and `¬∃R(a)` when neither a named individual nor a fresh
/// element can be an `R`-successor of `a`. Hypotheses are only explored
/// where an overriding rule or a query needs the negative literal. The
/// third entry lists variables guarded to named individuals.
const COMPLETION: &[(&str, &str, &[&str])] = &[
    // Every axiom, ignoring defeasibility, for reasoning about anonymous
    // elements where no exception can apply.
    ("cmp-any-subc1", "any_subclass(Y,Z) :- subClass(Y,Z).", &[]),
    (
        "cmp-any-subc2",
        "any_subclass(Y,Z) :- def_subclass(Y,Z).",
        &[],
    ),
    ("cmp-any-supnot1", "any_supnot(Y,Z) :- supNot(Y,Z).", &[]),
    (
        "cmp-any-supnot2",
        "any_supnot(Y,Z) :- def_supnot(Y,Z).",
        &[],
    ),
    ("cmp-any-subex1", "any_subex(R,Z) :- subEx(R,Z).", &[]),
    ("cmp-any-subex2", "any_subex(R,Z) :- def_subex(R,Z).", &[]),
    ("cmp-any-supex1", "any_supex(Y,R) :- supEx(Y,R,W).", &[]),
    ("cmp-any-supex2", "any_supex(Y,R) :- def_supex(Y,R,W).", &[]),
    ("cmp-any-subr1", "any_subr(R,S) :- subRole(R,S).", &[]),
    ("cmp-any-subr2", "any_subr(R,S) :- def_subr(R,S).", &[]),
    ("cmp-any-dis1", "any_dis(R,S) :- dis(R,S).", &[]),
    ("cmp-any-dis2", "any_dis(R,S) :- def_dis(R,S).", &[]),
    ("cmp-any-inv1", "any_inv(R,S) :- inv(R,S).", &[]),
    ("cmp-any-inv2", "any_inv(R,S) :- def_inv(R,S).", &[]),
    // rc(R,S,D): a fact R(x,y) with y anonymous entails S(x,y) (fw) or
    // S(y,x) (bw).
    ("cmp-seed1", "seed(R) :- any_supex(Y,R).", &[]),
    ("cmp-seed2", "seed(R) :- need_p(X,R).", &[]),
    ("cmp-rc-self", "rc(R,R,fw) :- seed(R).", &[]),
    ("cmp-rc-subr", "rc(R,T,D) :- rc(R,S,D), any_subr(S,T).", &[]),
    (
        "cmp-rc-inv1",
        "rc(R,T,E) :- rc(R,S,D), any_inv(S,T), flip(D,E).",
        &[],
    ),
    (
        "cmp-rc-inv2",
        "rc(R,T,E) :- rc(R,S,D), any_inv(T,S), flip(D,E).",
        &[],
    ),
    (
        "cmp-rbad",
        "rbad(R) :- rc(R,S,D), rc(R,T,D), any_dis(S,T).",
        &[],
    ),
    // at(R,B): an anonymous R-successor is a B.
    (
        "cmp-at-subex",
        "at(R,B) :- rc(R,S,bw), any_subex(S,B).",
        &[],
    ),
    ("cmp-at-subc", "at(R,Z) :- at(R,Y), any_subclass(Y,Z).", &[]),
    ("cmp-at-seed", "aseed(R,T) :- at(R,Y), any_supex(Y,T).", &[]),
    ("cmp-seed3", "seed(T) :- aseed(R,T).", &[]),
    (
        "cmp-at-succ",
        "at(R,B) :- aseed(R,T), rc(T,S,fw), any_subex(S,B).",
        &[],
    ),
    (
        "cmp-abad1",
        "abad(R) :- at(R,Y), at(R,Z), any_supnot(Y,Z).",
        &[],
    ),
    ("cmp-abad2", "abad(R) :- aseed(R,T), rbad(T).", &[]),
    ("cmp-abad3", "abad(R) :- aseed(R,T), abad(T).", &[]),
    // Which negative literals are needed by overriding rules.
    ("cmp-need-inst", "need_c(X,Y) :- def_insta(X,Y).", &["X"]),
    (
        "cmp-need-triple",
        "need_r(X,R,Y) :- def_triplea(X,R,Y).",
        &["X", "Y"],
    ),
    (
        "cmp-need-subc",
        "need_c(X,Z) :- def_subclass(Y,Z), instd(X,Y).",
        &["X"],
    ),
    (
        "cmp-need-subex",
        "need_c(X,Z) :- def_subex(R,Z), tripled(X,R,W).",
        &["X"],
    ),
    (
        "cmp-need-supex",
        "need_ex(X,R) :- def_supex(Y,R,W), instd(X,Y).",
        &["X"],
    ),
    (
        "cmp-need-subr",
        "need_r(X,S,Y) :- def_subr(R,S), tripled(X,R,Y).",
        &["X", "Y"],
    ),
    (
        "cmp-need-inv1",
        "need_r(Y,S,X) :- def_inv(R,S), tripled(X,R,Y).",
        &["X", "Y"],
    ),
    (
        "cmp-need-inv2",
        "need_r(X,R,Y) :- def_inv(R,S), tripled(Y,S,X).",
        &["X", "Y"],
    ),
    ("cmp-need-exp", "need_p(X,R) :- need_ex(X,R).", &[]),
    (
        "cmp-need-exn",
        "need_r(X,R,C) :- need_ex(X,R), nom(C).",
        &[],
    ),
    // hcl(X,H,B): assuming H(X), B(X) holds.
    ("cmp-hcl-self", "hcl(X,H,H) :- need_c(X,H).", &[]),
    (
        "cmp-hcl-subc",
        "hcl(X,H,Z) :- hcl(X,H,Y), subClass(Y,Z).",
        &[],
    ),
    (
        "cmp-hcl-dsubc",
        "hcl(X,H,Z) :- hcl(X,H,Y), def_subclass(Y,Z), not ovr(subClass,X,Y,Z).",
        &[],
    ),
    ("cmp-hsx", "hsx(X,H,R) :- hcl(X,H,Y), supEx(Y,R,W).", &[]),
    (
        "cmp-hsx-d",
        "hsx(X,H,R) :- hcl(X,H,Y), def_supex(Y,R,W), not ovr(supEx,X,Y,R,W).",
        &[],
    ),
    (
        "cmp-hcl-subex",
        "hcl(X,H,B) :- hsx(X,H,R), rc(R,S,fw), subEx(S,B).",
        &[],
    ),
    (
        "cmp-hcl-dsubex",
        "hcl(X,H,B) :- hsx(X,H,R), rc(R,S,fw), def_subex(S,B), not ovr(subEx,X,S,B).",
        &[],
    ),
    (
        "cmp-hbad-supnot1",
        "hbad(X,H) :- hcl(X,H,Y), hcl(X,H,Z), supNot(Y,Z).",
        &[],
    ),
    (
        "cmp-hbad-supnot2",
        "hbad(X,H) :- hcl(X,H,Y), instd(X,Z), supNot(Y,Z).",
        &[],
    ),
    (
        "cmp-hbad-supnot3",
        "hbad(X,H) :- hcl(X,H,Z), instd(X,Y), supNot(Y,Z).",
        &[],
    ),
    (
        "cmp-hbad-dsupnot1",
        "hbad(X,H) :- hcl(X,H,Y), hcl(X,H,Z), def_supnot(Y,Z), not ovr(supNot,X,Y,Z).",
        &[],
    ),
    (
        "cmp-hbad-dsupnot2",
        "hbad(X,H) :- hcl(X,H,Y), instd(X,Z), def_supnot(Y,Z), not ovr(supNot,X,Y,Z).",
        &[],
    ),
    (
        "cmp-hbad-dsupnot3",
        "hbad(X,H) :- hcl(X,H,Z), instd(X,Y), def_supnot(Y,Z), not ovr(supNot,X,Y,Z).",
        &[],
    ),
    (
        "cmp-hbad-ninst",
        "hbad(X,H) :- hcl(X,H,Y), -insta(X,Y).",
        &[],
    ),
    (
        "cmp-hbad-dninst",
        "hbad(X,H) :- hcl(X,H,Y), def_ninsta(X,Y), not ovr(ninsta,X,Y).",
        &[],
    ),
    ("cmp-hbad-rbad", "hbad(X,H) :- hsx(X,H,R), rbad(R).", &[]),
    ("cmp-hbad-abad", "hbad(X,H) :- hsx(X,H,R), abad(R).", &[]),
    ("cmp-ninstd", "-instd(X,H) :- hbad(X,H).", &[]),
    // hrl(X,R,Y,S,D): assuming R(X,Y), S(X,Y) (fw) or S(Y,X) (bw) holds.
    ("cmp-hrl-self", "hrl(X,R,Y,R,fw) :- need_r(X,R,Y).", &[]),
    ("cmp-hrl-loop1", "hrl(X,R,X,S,fw) :- hrl(X,R,X,S,bw).", &[]),
    ("cmp-hrl-loop2", "hrl(X,R,X,S,bw) :- hrl(X,R,X,S,fw).", &[]),
    (
        "cmp-hrl-subr",
        "hrl(X,R,Y,T,D) :- hrl(X,R,Y,S,D), subRole(S,T).",
        &[],
    ),
    (
        "cmp-hrl-dsubr1",
        "hrl(X,R,Y,T,fw) :- hrl(X,R,Y,S,fw), def_subr(S,T), not ovr(subRole,X,Y,S,T).",
        &[],
    ),
    (
        "cmp-hrl-dsubr2",
        "hrl(X,R,Y,T,bw) :- hrl(X,R,Y,S,bw), def_subr(S,T), not ovr(subRole,Y,X,S,T).",
        &[],
    ),
    (
        "cmp-hrl-inv1",
        "hrl(X,R,Y,T,E) :- hrl(X,R,Y,S,D), inv(S,T), flip(D,E).",
        &[],
    ),
    (
        "cmp-hrl-inv2",
        "hrl(X,R,Y,T,E) :- hrl(X,R,Y,S,D), inv(T,S), flip(D,E).",
        &[],
    ),
    (
        "cmp-hrl-dinv1",
        "hrl(X,R,Y,T,bw) :- hrl(X,R,Y,S,fw), def_inv(S,T), not ovr(inv,X,Y,S,T).",
        &[],
    ),
    (
        "cmp-hrl-dinv2",
        "hrl(X,R,Y,T,fw) :- hrl(X,R,Y,S,bw), def_inv(S,T), not ovr(inv,Y,X,S,T).",
        &[],
    ),
    (
        "cmp-hrl-dinv3",
        "hrl(X,R,Y,T,bw) :- hrl(X,R,Y,S,fw), def_inv(T,S), not ovr(inv,Y,X,T,S).",
        &[],
    ),
    (
        "cmp-hrl-dinv4",
        "hrl(X,R,Y,T,fw) :- hrl(X,R,Y,S,bw), def_inv(T,S), not ovr(inv,X,Y,T,S).",
        &[],
    ),
    (
        "cmp-hrb1",
        "hrb(X,R,Y,X,B) :- hrl(X,R,Y,S,fw), subEx(S,B).",
        &[],
    ),
    (
        "cmp-hrb2",
        "hrb(X,R,Y,Y,B) :- hrl(X,R,Y,S,bw), subEx(S,B).",
        &[],
    ),
    (
        "cmp-hrb-d1",
        "hrb(X,R,Y,X,B) :- hrl(X,R,Y,S,fw), def_subex(S,B), not ovr(subEx,X,S,B).",
        &[],
    ),
    (
        "cmp-hrb-d2",
        "hrb(X,R,Y,Y,B) :- hrl(X,R,Y,S,bw), def_subex(S,B), not ovr(subEx,Y,S,B).",
        &[],
    ),
    ("cmp-hrb-need", "need_c(Z,B) :- hrb(X,R,Y,Z,B).", &[]),
    (
        "cmp-hrc",
        "hrc(X,R,Y,Z,C) :- hrb(X,R,Y,Z,B), hcl(Z,B,C).",
        &[],
    ),
    (
        "cmp-hrbad-concept",
        "hrbad(X,R,Y) :- hrb(X,R,Y,Z,B), hbad(Z,B).",
        &[],
    ),
    (
        "cmp-hrbad-supnot",
        "hrbad(X,R,Y) :- hrc(X,R,Y,Z,C), hrc(X,R,Y,Z,E), supNot(C,E).",
        &[],
    ),
    (
        "cmp-hrbad-dsupnot",
        "hrbad(X,R,Y) :- hrc(X,R,Y,Z,C), hrc(X,R,Y,Z,E), def_supnot(C,E), not ovr(supNot,Z,C,E).",
        &[],
    ),
    (
        "cmp-hrbad-dis1",
        "hrbad(X,R,Y) :- hrl(X,R,Y,S,D), hrl(X,R,Y,T,D), dis(S,T).",
        &[],
    ),
    (
        "cmp-hrbad-dis2",
        "hrbad(X,R,Y) :- hrl(X,R,Y,S,fw), tripled(X,T,Y), dis(S,T).",
        &[],
    ),
    (
        "cmp-hrbad-dis3",
        "hrbad(X,R,Y) :- hrl(X,R,Y,S,fw), tripled(X,T,Y), dis(T,S).",
        &[],
    ),
    (
        "cmp-hrbad-dis4",
        "hrbad(X,R,Y) :- hrl(X,R,Y,S,bw), tripled(Y,T,X), dis(S,T).",
        &[],
    ),
    (
        "cmp-hrbad-dis5",
        "hrbad(X,R,Y) :- hrl(X,R,Y,S,bw), tripled(Y,T,X), dis(T,S).",
        &[],
    ),
    (
        "cmp-hrbad-ddis1",
        "hrbad(X,R,Y) :- hrl(X,R,Y,S,fw), hrl(X,R,Y,T,fw), def_dis(S,T), not ovr(dis,X,Y,S,T).",
        &[],
    ),
    (
        "cmp-hrbad-ddis2",
        "hrbad(X,R,Y) :- hrl(X,R,Y,S,bw), hrl(X,R,Y,T,bw), def_dis(S,T), not ovr(dis,Y,X,S,T).",
        &[],
    ),
    (
        "cmp-hrbad-ddis3",
        "hrbad(X,R,Y) :- hrl(X,R,Y,S,fw), tripled(X,T,Y), def_dis(S,T), not ovr(dis,X,Y,S,T).",
        &[],
    ),
    (
        "cmp-hrbad-ddis4",
        "hrbad(X,R,Y) :- hrl(X,R,Y,S,fw), tripled(X,T,Y), def_dis(T,S), not ovr(dis,X,Y,T,S).",
        &[],
    ),
    (
        "cmp-hrbad-ddis5",
        "hrbad(X,R,Y) :- hrl(X,R,Y,S,bw), tripled(Y,T,X), def_dis(S,T), not ovr(dis,Y,X,S,T).",
        &[],
    ),
    (
        "cmp-hrbad-ddis6",
        "hrbad(X,R,Y) :- hrl(X,R,Y,S,bw), tripled(Y,T,X), def_dis(T,S), not ovr(dis,Y,X,T,S).",
        &[],
    ),
    (
        "cmp-hrbad-irr",
        "hrbad(X,R,X) :- hrl(X,R,X,S,fw), irr(S).",
        &[],
    ),
    (
        "cmp-hrbad-dirr",
        "hrbad(X,R,X) :- hrl(X,R,X,S,fw), def_irr(S), not ovr(irr,X,S).",
        &[],
    ),
    (
        "cmp-hrbad-ntriple1",
        "hrbad(X,R,Y) :- hrl(X,R,Y,S,fw), -triplea(X,S,Y).",
        &[],
    ),
    (
        "cmp-hrbad-ntriple2",
        "hrbad(X,R,Y) :- hrl(X,R,Y,S,bw), -triplea(Y,S,X).",
        &[],
    ),
    (
        "cmp-hrbad-dntriple1",
        "hrbad(X,R,Y) :- hrl(X,R,Y,S,fw), def_ntriplea(X,S,Y), not ovr(ntriplea,X,S,Y).",
        &[],
    ),
    (
        "cmp-hrbad-dntriple2",
        "hrbad(X,R,Y) :- hrl(X,R,Y,S,bw), def_ntriplea(Y,S,X), not ovr(ntriplea,Y,S,X).",
        &[],
    ),
    ("cmp-ntripled", "-tripled(X,R,Y) :- hrbad(X,R,Y).", &[]),
    // pbad(X,R): no fresh element can be an R-successor of X.
    (
        "cmp-pbc",
        "pbc(X,R,B) :- need_p(X,R), rc(R,S,fw), subEx(S,B).",
        &[],
    ),
    (
        "cmp-pbc-d",
        "pbc(X,R,B) :- need_p(X,R), rc(R,S,fw), def_subex(S,B), not ovr(subEx,X,S,B).",
        &[],
    ),
    ("cmp-pbc-need", "need_c(X,B) :- pbc(X,R,B).", &[]),
    ("cmp-pc", "pc(X,R,C) :- pbc(X,R,B), hcl(X,B,C).", &[]),
    (
        "cmp-pbad-concept",
        "pbad(X,R) :- pbc(X,R,B), hbad(X,B).",
        &[],
    ),
    (
        "cmp-pbad-supnot",
        "pbad(X,R) :- pc(X,R,C), pc(X,R,E), supNot(C,E).",
        &[],
    ),
    (
        "cmp-pbad-dsupnot",
        "pbad(X,R) :- pc(X,R,C), pc(X,R,E), def_supnot(C,E), not ovr(supNot,X,C,E).",
        &[],
    ),
    ("cmp-pbad-rbad", "pbad(X,R) :- need_p(X,R), rbad(R).", &[]),
    ("cmp-pbad-abad", "pbad(X,R) :- need_p(X,R), abad(R).", &[]),
    // Replaces the chain conclusion: the chain runs over named
    // individuals only and a fresh successor must be ruled out too.
    (
        "cmp-allnrel",
        "all_nrel(X,R) :- last(Y), all_nrel_step(X,R,Y), pbad(X,R).",
        &[],
    ),
];

/// Hypotheses for every named individual, concept and role, so that every
/// negative instance query is decided.
const ALL_NEGATIVES: &[(&str, &str)] = &[
    ("cmp-need-allc", "need_c(X,C) :- nom(X), cls(C)."),
    ("cmp-need-allr", "need_r(X,R,Y) :- nom(X), rol(R), nom(Y)."),
];

/// Label of the chain conclusion replaced by `cmp-allnrel`.
pub const REPLACED_BY_COMPLETION: &str = "pdlr-allnrel3";

/// Which block of the schema a rule belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RuleGroup {
    Deduction,
    Overriding,
    Application,
    Completion,
}

fn parse_rule(label: &str, text: &str) -> Rule {
    let mut p = parse_asp_text(text).expect("schema rule parses");
    assert_eq!(p.rules.len(), 1, "schema entry {label} is one rule");
    p.rules.pop().unwrap().labeled(label)
}

/// The schema rules in order. With `guard_named`, overriding rules only fire
/// on named individuals (`nom/1`).
pub fn schema_rules(guard_named: bool) -> Vec<(RuleGroup, Rule)> {
    static CACHE: [OnceLock<Vec<(RuleGroup, Rule)>>; 2] = [OnceLock::new(), OnceLock::new()];
    CACHE[usize::from(guard_named)]
        .get_or_init(|| build_schema_rules(guard_named))
        .clone()
}

fn build_schema_rules(guard_named: bool) -> Vec<(RuleGroup, Rule)> {
    let mut out = Vec::new();
    for (label, text) in DEDUCTION {
        out.push((RuleGroup::Deduction, parse_rule(label, text)));
    }
    for (label, text, subjects) in OVERRIDING {
        let mut rule = parse_rule(label, text);
        if guard_named {
            for v in *subjects {
                rule.body_pos
                    .push(Literal::new("nom", false, vec![Term::var(*v)]));
            }
        }
        out.push((RuleGroup::Overriding, rule));
    }
    for (label, text) in APPLICATION {
        out.push((RuleGroup::Application, parse_rule(label, text)));
    }
    out
}

/// The refutation rules, guarded like the overriding rules. With
/// `all_negatives`, every negative instance over named individuals is
/// decided rather than only those overriding needs.
pub fn completion_rules(guard_named: bool, all_negatives: bool) -> Vec<Rule> {
    static CACHE: [OnceLock<Vec<Rule>>; 4] = [const { OnceLock::new() }; 4];
    CACHE[usize::from(guard_named) * 2 + usize::from(all_negatives)]
        .get_or_init(|| build_completion_rules(guard_named, all_negatives))
        .clone()
}

fn build_completion_rules(guard_named: bool, all_negatives: bool) -> Vec<Rule> {
    let mut out = Vec::new();
    for (label, text, subjects) in COMPLETION {
        let mut rule = parse_rule(label, text);
        if guard_named {
            for v in *subjects {
                rule.body_pos
                    .push(Literal::new("nom", false, vec![Term::var(*v)]));
            }
        }
        out.push(rule);
    }
    if all_negatives {
        for (label, text) in ALL_NEGATIVES {
            out.push(parse_rule(label, text));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_sizes() {
        let rules = schema_rules(false);
        let count = |g| rules.iter().filter(|(x, _)| *x == g).count();
        assert_eq!(count(RuleGroup::Deduction), 24);
        assert_eq!(count(RuleGroup::Overriding), 13);
        assert_eq!(count(RuleGroup::Application), 21);
    }

    #[test]
    fn all_rules_are_safe_and_naf_only_on_ovr() {
        for guard in [false, true] {
            for (group, rule) in schema_rules(guard) {
                assert!(rule.is_safe(), "{rule}");
                for l in &rule.body_naf {
                    assert_eq!(l.predicate.as_str(), "ovr");
                }
                assert_eq!(
                    group == RuleGroup::Application,
                    !rule.body_naf.is_empty(),
                    "{rule}"
                );
            }
        }
    }

    #[test]
    fn completion_rules_are_safe_and_naf_only_on_ovr() {
        for guard in [false, true] {
            for all in [false, true] {
                let rules = completion_rules(guard, all);
                assert!(!rules.is_empty());
                for rule in &rules {
                    assert!(rule.is_safe(), "{rule}");
                    for l in &rule.body_naf {
                        assert_eq!(l.predicate.as_str(), "ovr", "{rule}");
                    }
                    assert!(rule.label.as_deref().unwrap().starts_with("cmp-"));
                }
            }
            assert!(completion_rules(guard, true).len() > completion_rules(guard, false).len());
        }
    }

    #[test]
    fn guards_only_touch_overriding_rules() {
        let plain = schema_rules(false);
        let guarded = schema_rules(true);
        for ((g, a), (_, b)) in plain.iter().zip(&guarded) {
            if *g == RuleGroup::Overriding {
                assert!(b.body_pos.len() > a.body_pos.len());
                assert!(b.body_pos.last().unwrap().predicate.as_str() == "nom");
            } else {
                assert_eq!(a, b);
            }
        }
    }
}
