"""Five-axis personality model: 25-question forced-choice quiz and type similarity.

Each axis has two poles, each pole a distinct letter, so a type is a
5-letter code (32 legal codes). The quiz carries exactly 5 questions per
axis; with forced binary choices and an odd count per axis a tie is
impossible, so scoring always yields a definite code.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from enum import Enum
from importlib import resources
from typing import Dict, Optional, Tuple

QUESTIONS_PER_AXIS = 5
BANK_SIZE = 25


class Axis(Enum):
    """The five trait axes with their (first, second) pole letters."""

    SOCIABILITY = ("sociability", "O", "R")      # outgoing / reserved
    DECISION_BASIS = ("decision_basis", "E", "M")  # empathy / mind
    WORK_STYLE = ("work_style", "T", "L")        # team player / lone wolf
    AUTHORITY = ("authority", "C", "D")          # takes commands / defiant
    STRUCTURE = ("structure", "S", "F")          # strict routine / flexible

    @property
    def key(self) -> str:
        return self.value[0]

    @property
    def poles(self) -> Tuple[str, str]:
        return (self.value[1], self.value[2])


AXES = tuple(Axis)
_AXIS_BY_KEY = {axis.key: axis for axis in AXES}
_POLE_SETS = tuple(frozenset(axis.poles) for axis in AXES)


class QuizError(ValueError):
    """Base for quiz submission problems."""


class IncompleteResponseError(QuizError):
    """Answers do not cover the bank exactly once."""


class UnknownQuestionError(QuizError):
    """An answer references a question id absent from the bank."""


def axis_from_key(key: str) -> Axis:
    try:
        return _AXIS_BY_KEY[key]
    except KeyError:
        raise ValueError(f"unknown axis {key!r}") from None


def is_valid_code(code: str) -> bool:
    """True iff code is one of the 32 legal 5-letter type codes."""
    if not isinstance(code, str) or len(code) != len(AXES):
        return False
    return all(letter in _POLE_SETS[i] for i, letter in enumerate(code))


def similarity(a: str, b: str) -> float:
    """Fraction of axes on which the two codes agree, in {0, 0.2, ..., 1.0}."""
    if not is_valid_code(a):
        raise ValueError(f"invalid personality code {a!r}")
    if not is_valid_code(b):
        raise ValueError(f"invalid personality code {b!r}")
    agreeing = sum(1 for x, y in zip(a, b) if x == y)
    return agreeing / len(AXES)


@dataclass(frozen=True)
class QuizOption:
    text: str
    pole: str


@dataclass(frozen=True)
class QuizQuestion:
    question_id: str
    text: str
    axis: Axis
    option_a: QuizOption
    option_b: QuizOption

    def pole_of(self, choice: str) -> str:
        if choice == "a":
            return self.option_a.pole
        if choice == "b":
            return self.option_b.pole
        raise ValueError(f"choice must be 'a' or 'b', got {choice!r}")


@dataclass(frozen=True)
class QuizBank:
    questions: tuple

    def __post_init__(self):
        object.__setattr__(self, "questions", tuple(self.questions))

    def by_id(self) -> Dict[str, QuizQuestion]:
        return {q.question_id: q for q in self.questions}


@dataclass(frozen=True)
class QuizResponseSet:
    """A candidate's answers: question id -> chosen option ('a' or 'b')."""

    candidate_id: str
    answers: dict = field(default_factory=dict)


@dataclass(frozen=True)
class PersonalityResult:
    candidate_id: str
    code: str
    tallies: dict  # axis key -> (first-pole count, second-pole count)
    taken_at: datetime


@dataclass(frozen=True)
class BankReport:
    violations: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_bank(bank: QuizBank) -> BankReport:
    """Confirm 25 well-formed questions, exactly 5 per axis, unique ids."""
    violations = []
    if len(bank.questions) != BANK_SIZE:
        violations.append(f"bank size != {BANK_SIZE}")
    seen = set()
    per_axis: Dict[Axis, int] = {axis: 0 for axis in AXES}
    for q in bank.questions:
        if q.question_id in seen:
            violations.append(f"duplicate question id {q.question_id}")
        seen.add(q.question_id)
        per_axis[q.axis] = per_axis.get(q.axis, 0) + 1
        poles = {q.option_a.pole, q.option_b.pole}
        if poles != set(q.axis.poles):
            violations.append(f"question {q.question_id}: options do not cover both poles of {q.axis.key}")
        if not q.text.strip() or not q.option_a.text.strip() or not q.option_b.text.strip():
            violations.append(f"question {q.question_id}: empty text")
    for axis, count in per_axis.items():
        if count != QUESTIONS_PER_AXIS and len(bank.questions) == BANK_SIZE:
            violations.append(f"axis {axis.key} has {count} questions, expected {QUESTIONS_PER_AXIS}")
    return BankReport(tuple(violations))


def score_quiz(bank: QuizBank, responses: QuizResponseSet,
               taken_at: Optional[datetime] = None) -> PersonalityResult:
    """Tally chosen poles per axis and take the majority pole as the code letter.

    The responses must cover the bank exactly: a missing answer raises
    IncompleteResponseError, an answer for a question the bank does not
    contain raises UnknownQuestionError.
    """
    questions = bank.by_id()
    unknown = set(responses.answers) - set(questions)
    if unknown:
        raise UnknownQuestionError(f"unknown question ids: {sorted(unknown)}")
    missing = set(questions) - set(responses.answers)
    if missing:
        raise IncompleteResponseError(
            f"{len(responses.answers)} of {len(questions)} questions answered; missing: {sorted(missing)}"
        )

    counts: Dict[Axis, Dict[str, int]] = {axis: {axis.poles[0]: 0, axis.poles[1]: 0} for axis in AXES}
    for qid, choice in responses.answers.items():
        question = questions[qid]
        pole = question.pole_of(choice)
        counts[question.axis][pole] += 1

    letters = []
    tallies = {}
    for axis in AXES:
        first, second = axis.poles
        c_first, c_second = counts[axis][first], counts[axis][second]
        # 5 forced-choice questions per axis: a tie cannot happen
        letters.append(first if c_first > c_second else second)
        tallies[axis.key] = (c_first, c_second)

    return PersonalityResult(
        candidate_id=responses.candidate_id,
        code="".join(letters),
        tallies=tallies,
        taken_at=taken_at or datetime.now(timezone.utc),
    )


def load_bank(path) -> QuizBank:
    """Load a quiz bank from its JSON document (see docs/formats.md)."""
    with open(path, "r", encoding="utf-8") as fh:
        return parse_bank(json.load(fh))


def parse_bank(doc: dict) -> QuizBank:
    if not isinstance(doc, dict) or "questions" not in doc:
        raise ValueError("quiz bank document must be an object with a 'questions' list")
    questions = []
    for entry in doc["questions"]:
        for key in ("id", "text", "axis", "option_a", "option_b"):
            if key not in entry:
                raise ValueError(f"quiz bank question missing field {key!r}")
        axis = axis_from_key(entry["axis"])
        options = []
        for opt_key in ("option_a", "option_b"):
            opt = entry[opt_key]
            if "text" not in opt or "pole" not in opt:
                raise ValueError(f"question {entry['id']}: {opt_key} needs 'text' and 'pole'")
            options.append(QuizOption(text=opt["text"], pole=opt["pole"]))
        questions.append(QuizQuestion(
            question_id=entry["id"], text=entry["text"], axis=axis,
            option_a=options[0], option_b=options[1],
        ))
    return QuizBank(tuple(questions))


def default_bank() -> QuizBank:
    """The bank shipped with the package (25 questions, 5 per axis)."""
    data = resources.files("talentmatch.data").joinpath("quiz_bank.json").read_text(encoding="utf-8")
    return parse_bank(json.loads(data))
