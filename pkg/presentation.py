"""
Представления Эссерта панельно-регулярных решеток, классификация кручения
и гомоморфизмы решеток s_i -> sigma_i^(n/n0).
"""
import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from loguru import logger

from difference_set import check_difference_set
from errors import ConditionFailed, InvalidData, ZeroD
from models import (
    EssertDataModel,
    MorphismCertificate,
    PresentationModel,
    TorsionVerdict,
    VerificationReport,
)

# Слово: последовательность пар (номер образующей, ненулевая степень)
Word = Tuple[Tuple[int, int], ...]


def reduce_word(word: Sequence[Tuple[int, int]]) -> Word:
    """Свободная редукция слова в записи по сериям"""
    stack: List[List[int]] = []
    for gen, exp in word:
        if exp == 0:
            continue
        if stack and stack[-1][0] == gen:
            stack[-1][1] += exp
            if stack[-1][1] == 0:
                stack.pop()
        else:
            stack.append([gen, exp])
    return tuple((g, e) for g, e in stack)


def invert_word(word: Word) -> Word:
    return tuple((g, -e) for g, e in reversed(word))


def concat(*words: Word) -> Word:
    out: List[Tuple[int, int]] = []
    for w in words:
        out.extend(w)
    return reduce_word(out)


def word_letters(word: Word) -> List[Tuple[int, int]]:
    """Развертка в буквы (образующая, +1/-1)"""
    letters = []
    for gen, exp in word:
        sign = 1 if exp > 0 else -1
        letters.extend([(gen, sign)] * abs(exp))
    return letters


@dataclass(frozen=True)
class Presentation:
    generators: Tuple[str, ...]
    relators: Tuple[Word, ...]

    @classmethod
    def build(cls, generators: Sequence[str], relators: Sequence[Sequence[Tuple[int, int]]]) -> "Presentation":
        reduced = tuple(r for r in (reduce_word(r) for r in relators) if r)
        for r in reduced:
            for gen, _ in r:
                if not 0 <= gen < len(generators):
                    raise InvalidData(f"Образующая {gen} вне алфавита", {"generator": gen})
        return cls(tuple(generators), reduced)

    def to_model(self) -> PresentationModel:
        return PresentationModel(generators=list(self.generators), relators=[list(r) for r in self.relators])

    def format_word(self, word: Word) -> str:
        if not word:
            return "1"
        parts = []
        for gen, exp in word:
            name = self.generators[gen]
            parts.append(name if exp == 1 else f"{name}^{exp}")
        return "*".join(parts)


# ----------------------------------------------------------------------
# Импорт и экспорт в формате GAP
# ----------------------------------------------------------------------
def presentation_to_gap(p: Presentation) -> str:
    names = ", ".join(f'"{g}"' for g in p.generators)
    assigns = " ".join(f"{g} := F.{i + 1};;" for i, g in enumerate(p.generators))
    relators = ", ".join(p.format_word(r) for r in p.relators)
    return f"F := FreeGroup({names});\n{assigns}\nG := F / [ {relators} ];\n"


_TOKEN = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(?:\^(-?\d+))?$")


def presentation_from_gap(text: str) -> Presentation:
    gens_match = re.search(r"FreeGroup\(([^)]*)\)", text)
    rels_match = re.search(r"F\s*/\s*\[(.*)\]", text, re.S)
    if not gens_match or not rels_match:
        raise InvalidData("Текст не похож на представление GAP", {})
    generators = [g.strip().strip('"') for g in gens_match.group(1).split(",") if g.strip()]
    index = {g: i for i, g in enumerate(generators)}

    relators = []
    for chunk in rels_match.group(1).split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        word = []
        for token in chunk.split("*"):
            m = _TOKEN.match(token.strip())
            if not m or m.group(1) not in index:
                raise InvalidData(f"Не удалось разобрать множитель '{token}'", {"token": token})
            word.append((index[m.group(1)], int(m.group(2) or 1)))
        relators.append(word)
    return Presentation.build(generators, relators)


# ----------------------------------------------------------------------
# Данные Эссерта
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class EssertData:
    q: int
    n: int
    D: Tuple[int, ...]
    pi1: Tuple[Tuple[int, int], ...]
    pi2: Tuple[Tuple[int, int], ...]

    @classmethod
    def make(cls, q: int, D: Sequence[int], pi1: Dict[int, int], pi2: Dict[int, int]) -> "EssertData":
        data = cls(q, q * q + q + 1, tuple(sorted(D)), tuple(sorted(pi1.items())), tuple(sorted(pi2.items())))
        data.validate()
        return data

    @property
    def pi1_map(self) -> Dict[int, int]:
        return dict(self.pi1)

    @property
    def pi2_map(self) -> Dict[int, int]:
        return dict(self.pi2)

    def validate(self) -> None:
        if self.n != self.q * self.q + self.q + 1:
            raise InvalidData("n != q^2+q+1", {"q": self.q, "n": self.n})
        if 0 not in self.D or len(self.D) != self.q + 1:
            raise InvalidData("D должно содержать 0 и иметь q+1 элементов", {"D": list(self.D)})
        if not check_difference_set(self.n, self.D).verified:
            raise InvalidData("D не является разностным множеством", {"D": list(self.D)})
        for name, perm in (("pi1", self.pi1_map), ("pi2", self.pi2_map)):
            if sorted(perm) != list(self.D) or sorted(perm.values()) != list(self.D):
                raise InvalidData(f"{name} не является перестановкой D", {name: perm})
            if perm[0] != 0:
                raise InvalidData(f"{name} не фиксирует 0", {name: perm})

    def to_model(self) -> EssertDataModel:
        return EssertDataModel(q=self.q, n=self.n, D=list(self.D), pi1=self.pi1_map, pi2=self.pi2_map)


def essert_presentation(data: EssertData) -> Presentation:
    """<s0, s1, s2 | s_i^n, s0^d s1^pi1(d) s2^pi2(d) для d в D без 0>"""
    data.validate()
    n = data.n
    pi1, pi2 = data.pi1_map, data.pi2_map
    relators = [[(i, n)] for i in range(3)]
    for d in data.D:
        if d == 0:
            continue
        relators.append([(0, d), (1, pi1[d]), (2, pi2[d])])
    return Presentation.build(("s0", "s1", "s2"), relators)


def gamma0() -> EssertData:
    """Решетка Gamma_0: (7, {0,1,3}, tau1 = id, tau2 = (1 3))"""
    return EssertData.make(2, (0, 1, 3), {0: 0, 1: 1, 3: 3}, {0: 0, 1: 3, 3: 1})


def gamma2() -> EssertData:
    """Решетка с соотношениями s0 s1 s2 и s0^3 s1^3 s2^3"""
    return EssertData.make(2, (0, 1, 3), {0: 0, 1: 1, 3: 3}, {0: 0, 1: 1, 3: 3})


# ----------------------------------------------------------------------
# Кручение
# ----------------------------------------------------------------------
def torsion_classify(data: EssertData, d: int, e: int) -> TorsionVerdict:
    """sigma0^d sigma1^e конечного порядка тогда и только тогда, когда e in {0, pi1(d)}"""
    n = data.n
    d %= n
    e %= n
    if d == 0:
        raise ZeroD("d = 0: sigma1^e всегда конечного порядка", {"e": e})
    if d not in data.D:
        raise InvalidData(f"d={d} не лежит в D", {"d": d, "D": list(data.D)})

    word = list(reduce_word([(0, d), (1, e)]))
    if e == 0:
        verdict, why = "finite", "power_of_sigma0"
    elif e == data.pi1_map[d]:
        verdict, why = "finite", "relator_conjugate_of_sigma2_power"
    else:
        verdict, why = "infinite", "not_in_finite_branch"
    return TorsionVerdict(d=d, e=e, word=word, verdict=verdict, justification=why)


def torsion_census(data: EssertData, d: int) -> Dict[str, int]:
    """Разбиение {sigma0^d sigma1^e : e} на конечные и бесконечные"""
    verdicts = [torsion_classify(data, d, e).verdict for e in range(data.n)]
    return {"finite": verdicts.count("finite"), "infinite": verdicts.count("infinite")}


# ----------------------------------------------------------------------
# Гомоморфизмы решеток
# ----------------------------------------------------------------------
def lattice_morphism(source: EssertData, target: EssertData) -> MorphismCertificate:
    """Проверка трех условий и свидетельство бесконечного образа"""
    n0, n = source.n, target.n
    conditions = {"divides": n % n0 == 0, "scaled_inclusion": False, "permutation_compatibility": False}
    if not conditions["divides"]:
        raise ConditionFailed("n0 не делит n", {"bullet": 1, "n0": n0, "n": n})
    scale = n // n0

    missing = next((d for d in source.D if (d * scale) % n not in target.D), None)
    if missing is not None:
        raise ConditionFailed("Масштабированный элемент D0 не лежит в D", {"bullet": 2, "d": missing, "scaled": missing * scale % n})
    conditions["scaled_inclusion"] = True

    for d in source.D:
        for i, (tau, pi) in enumerate(((source.pi1_map, target.pi1_map), (source.pi2_map, target.pi2_map)), start=1):
            if pi[(d * scale) % n] != (tau[d] * scale) % n:
                raise ConditionFailed(
                    f"pi{i}(d n/n0) != tau{i}(d) n/n0", {"bullet": 3, "d": d, "index": i}
                )
    conditions["permutation_compatibility"] = True

    d = min(x for x in source.D if x)
    tau1 = source.pi1_map[d]
    e = next(x for x in range(1, n0) if x != tau1)
    witness = torsion_classify(target, d * scale, e * scale)

    certificate = MorphismCertificate(
        source=source.to_model(),
        target=target.to_model(),
        scale=scale,
        conditions=conditions,
        assignment={f"s{i}": [(i, scale)] for i in range(3)},
        witness=witness,
        valid=witness.verdict == "infinite",
    )
    logger.info(f"Сертификат гомоморфизма: масштаб {scale}, свидетель d={d}, e={e}")
    return certificate


def check_morphism_relators(source: EssertData, target: EssertData, scale: int) -> VerificationReport:
    """Подстановка s_i -> sigma_i^scale переводит каждое соотношение источника в пустое слово"""
    n = target.n
    target_relators = {tuple(r) for r in essert_presentation(target).relators}
    checks: Dict[str, bool] = {}
    witnesses: Dict[str, List] = {}
    src = essert_presentation(source)
    for index, relator in enumerate(src.relators):
        image = reduce_word([(g, (e * scale) % n) for g, e in relator])
        reduces = not image or image in target_relators
        label = f"relator_{index}:{src.format_word(relator)}"
        checks[label] = reduces
        if not reduces:
            witnesses[label] = [list(x) for x in image]
    return VerificationReport.from_checks("morphism_relators", checks, witnesses=witnesses, data={"scale": scale})


def exotic_data(q: int, D: Sequence[int]) -> EssertData:
    """pi1 фиксирует 0, n/7, 3n/7; pi2 меняет n/7 и 3n/7; остальное тождественно"""
    n = q * q + q + 1
    a, b = n // 7, 3 * n // 7
    pi1 = {d: d for d in D}
    pi2 = {d: d for d in D}
    if a != b:
        pi2[a], pi2[b] = b, a
    return EssertData.make(q, D, pi1, pi2)
