"""
Конечно заданные группы: абелианизация, перечисление смежных классов
(Хаселгроув-Лич-Тодд), метод Райдемайстера-Шрайера и проверка совершенности.
"""
import itertools
from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

from loguru import logger

from config import DEFAULT_MAX_COSETS
from errors import CosetLimitExceeded, IncompleteTable
from int_matrix import smith_normal_form
from models import AbelianInvariants, VerificationReport
from presentation import Presentation, Word, concat, invert_word, reduce_word, word_letters
from utils.logging_utils import LogEventType, log_event


# ----------------------------------------------------------------------
# Абелианизация
# ----------------------------------------------------------------------
def relation_matrix(p: Presentation) -> List[List[int]]:
    rows = []
    for relator in p.relators:
        row = [0] * len(p.generators)
        for gen, exp in relator:
            row[gen] += exp
        rows.append(row)
    return rows


def _abelian_coordinates(p: Presentation) -> Tuple[List[int], List[List[int]]]:
    """Модули d_i (0 для свободных слагаемых) и образы образующих по строкам матрицы right"""
    ngens = len(p.generators)
    matrix = relation_matrix(p)
    if not matrix:
        return [0] * ngens, [[1 if i == j else 0 for j in range(ngens)] for i in range(ngens)]
    _, diag, right = smith_normal_form(matrix)
    moduli = [diag[i][i] if i < len(diag) else 0 for i in range(ngens)]
    images = [[right[j][i] % moduli[i] if moduli[i] else right[j][i] for i in range(ngens)] for j in range(ngens)]
    return moduli, images


def abelianization(p: Presentation) -> AbelianInvariants:
    """Нормальная форма Смита матрицы сумм показателей"""
    moduli, _ = _abelian_coordinates(p)
    factors = [d for d in moduli if d > 1]
    free_rank = sum(1 for d in moduli if d == 0)
    return AbelianInvariants(invariant_factors=factors, free_rank=free_rank)


# ----------------------------------------------------------------------
# Таблица смежных классов
# ----------------------------------------------------------------------
@dataclass
class CosetTable:
    """Полная таблица: action[c][2g] = c*s_g, action[c][2g+1] = c*s_g^-1"""
    ngens: int
    action: List[List[int]]
    complete: bool
    subgroup: List[Word]

    @property
    def index(self) -> int:
        return len(self.action)

    def apply(self, coset: int, word: Word) -> int:
        for gen, sign in word_letters(word):
            coset = self.action[coset][2 * gen + (0 if sign > 0 else 1)]
        return coset


def _letters(word: Word) -> List[int]:
    return [2 * gen + (0 if sign > 0 else 1) for gen, sign in word_letters(word)]


class _Enumerator:
    """Перечисление HLT с обработкой совпадений через объединение классов"""

    def __init__(self, ngens: int, max_cosets: int):
        """Инициализация с одним классом (подгруппа H)"""
        self.width = 2 * ngens
        self.table: List[List[Optional[int]]] = [[None] * self.width]
        self.parent: List[int] = [0]
        self.max_cosets = max_cosets

    @staticmethod
    def inv(x: int) -> int:
        return x ^ 1

    def alive(self, c: int) -> bool:
        return self.parent[c] == c

    def rep(self, c: int) -> int:
        root = c
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[c] != root:
            self.parent[c], c = root, self.parent[c]
        return root

    def define(self, c: int, x: int) -> None:
        if len(self.table) >= self.max_cosets:
            raise CosetLimitExceeded(
                f"Превышен предел {self.max_cosets} смежных классов", {"max_cosets": self.max_cosets}
            )
        d = len(self.table)
        self.table.append([None] * self.width)
        self.parent.append(d)
        self.table[c][x] = d
        self.table[d][self.inv(x)] = c

    def merge(self, k: int, l: int, queue: List[int]) -> None:
        phi, psi = self.rep(k), self.rep(l)
        if phi != psi:
            mu, nu = min(phi, psi), max(phi, psi)
            self.parent[nu] = mu
            queue.append(nu)

    def coincidence(self, a: int, b: int) -> None:
        queue: List[int] = []
        self.merge(a, b, queue)
        i = 0
        while i < len(queue):
            g = queue[i]
            i += 1
            for x in range(self.width):
                d = self.table[g][x]
                if d is None:
                    continue
                self.table[d][self.inv(x)] = None
                mu, nu = self.rep(g), self.rep(d)
                if self.table[mu][x] is not None:
                    self.merge(nu, self.table[mu][x], queue)
                elif self.table[nu][self.inv(x)] is not None:
                    self.merge(mu, self.table[nu][self.inv(x)], queue)
                else:
                    self.table[mu][x] = nu
                    self.table[nu][self.inv(x)] = mu

    def scan_and_fill(self, alpha: int, word: List[int]) -> None:
        table = self.table
        f, b = alpha, alpha
        i, j = 0, len(word) - 1
        while True:
            while i <= j and table[f][word[i]] is not None:
                f = table[f][word[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and table[b][self.inv(word[j])] is not None:
                b = table[b][self.inv(word[j])]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                table[f][word[i]] = b
                table[b][self.inv(word[i])] = f
                return
            self.define(f, word[i])

    def compact(self) -> List[List[int]]:
        live = [c for c in range(len(self.table)) if self.alive(c)]
        renumber = {c: k for k, c in enumerate(live)}
        if any(self.table[c][x] is None for c in live for x in range(self.width)):
            raise IncompleteTable("После перечисления остались неопределенные клетки", {"live": len(live)})
        return [[renumber[self.rep(self.table[c][x])] for x in range(self.width)] for c in live]


def todd_coxeter(p: Presentation, subgroup: Sequence[Word], max_cosets: int = DEFAULT_MAX_COSETS) -> CosetTable:
    """Перечисление смежных классов по подгруппе, порожденной словами subgroup"""
    ngens = len(p.generators)
    relators = [_letters(r) for r in p.relators]
    enum = _Enumerator(ngens, max_cosets)
    log_event(LogEventType.COSET_ENUMERATION_STARTED, "Перечисление смежных классов",
              generators=ngens, subgroup=len(subgroup))

    for w in subgroup:
        letters = _letters(reduce_word(w))
        if letters:
            enum.scan_and_fill(0, letters)

    alpha = 0
    while alpha < len(enum.table):
        if enum.alive(alpha):
            for r in relators:
                enum.scan_and_fill(alpha, r)
                if not enum.alive(alpha):
                    break
            if enum.alive(alpha):
                for x in range(enum.width):
                    if enum.table[alpha][x] is None:
                        enum.define(alpha, x)
        alpha += 1
        if alpha % 10000 == 0:
            logger.debug(f"Обработано {alpha} классов, определено {len(enum.table)}")

    action = enum.compact()
    log_event(LogEventType.COSET_ENUMERATION_DONE, f"Индекс подгруппы: {len(action)}",
              defined=len(enum.table))
    return CosetTable(ngens, action, True, [reduce_word(w) for w in subgroup])


def table_is_consistent(p: Presentation, table: CosetTable) -> bool:
    """Каждое соотношение замыкается от каждого класса, образующие H фиксируют класс 0"""
    for c in range(table.index):
        for r in p.relators:
            if table.apply(c, r) != c:
                return False
    return all(table.apply(0, w) == 0 for w in table.subgroup)


# ----------------------------------------------------------------------
# Коммутант
# ----------------------------------------------------------------------
def _commutators(ngens: int) -> List[Word]:
    return [
        reduce_word([(a, -1), (b, -1), (a, 1), (b, 1)])
        for a, b in itertools.combinations(range(ngens), 2)
    ]


def _abelian_elements(moduli: List[int]) -> List[Tuple[int, ...]]:
    ranges = [range(d) if d > 1 else range(1) for d in moduli]
    return list(itertools.product(*ranges))


def derived_coset_table(p: Presentation) -> CosetTable:
    """Таблица классов по коммутанту: классы - элементы абелианизации"""
    moduli, images = _abelian_coordinates(p)
    if any(d == 0 for d in moduli):
        raise CosetLimitExceeded("Абелианизация бесконечна: коммутант бесконечного индекса", {"moduli": moduli})
    elements = _abelian_elements(moduli)
    index = {e: k for k, e in enumerate(elements)}

    def shift(e: Tuple[int, ...], vec: List[int], sign: int) -> Tuple[int, ...]:
        return tuple((x + sign * v) % d if d > 1 else 0 for x, v, d in zip(e, vec, moduli))

    action = []
    for e in elements:
        row = []
        for g in range(len(p.generators)):
            row.append(index[shift(e, images[g], 1)])
            row.append(index[shift(e, images[g], -1)])
        action.append(row)
    table = CosetTable(len(p.generators), action, True, [])
    table.subgroup = derived_subgroup_generators(p, table)
    return table


def _transversal(table: CosetTable, strategy: str = "bfs") -> Tuple[Dict[int, Word], Dict[int, Tuple[int, int]]]:
    """Слова-представители классов и ребра дерева: parent[d] = (c, буква)"""
    words: Dict[int, Word] = {0: ()}
    parent: Dict[int, Tuple[int, int]] = {}
    frontier = deque([0])
    while frontier:
        c = frontier.popleft() if strategy == "bfs" else frontier.pop()
        for x in range(2 * table.ngens):
            d = table.action[c][x]
            if d not in words:
                gen, sign = x // 2, (1 if x % 2 == 0 else -1)
                words[d] = concat(words[c], ((gen, sign),))
                parent[d] = (c, x)
                frontier.append(d)
    if len(words) != table.index:
        raise IncompleteTable("Граф действия несвязен", {"reached": len(words), "index": table.index})
    return words, parent


def derived_subgroup_generators(p: Presentation, table: Optional[CosetTable] = None) -> List[Word]:
    """Коммутаторы образующих и слова Шрайера t_c * s * t_{cs}^-1 ядра абелианизации"""
    gens = _commutators(len(p.generators))
    if table is None:
        try:
            table = derived_coset_table(p)
        except CosetLimitExceeded:
            return gens
        return table.subgroup
    words, _ = _transversal(table)
    seen = set(gens)
    for c in range(table.index):
        for g in range(table.ngens):
            d = table.action[c][2 * g]
            w = concat(words[c], ((g, 1),), invert_word(words[d]))
            if w and w not in seen:
                seen.add(w)
                gens.append(w)
    return gens


# ----------------------------------------------------------------------
# Райдемайстер-Шрайер
# ----------------------------------------------------------------------
def reidemeister_schreier(p: Presentation, table: CosetTable, strategy: str = "bfs") -> Presentation:
    """Представление подгруппы: образующие Шрайера и переписанные сопряженные соотношения"""
    if not table.complete or any(x is None for row in table.action for x in row):
        raise IncompleteTable("Таблица смежных классов неполна", {"index": table.index})
    _, parent = _transversal(table, strategy)

    tree = set()
    for d, (c, x) in parent.items():
        if x % 2 == 0:
            tree.add((c, x // 2))
        else:
            tree.add((d, x // 2))

    schreier: Dict[Tuple[int, int], int] = {}
    names = []
    for c in range(table.index):
        for g in range(table.ngens):
            if (c, g) not in tree:
                schreier[(c, g)] = len(names)
                names.append(f"y{c}_{p.generators[g]}")

    relators = []
    for c in range(table.index):
        for r in p.relators:
            coset = c
            word = []
            for gen, sign in word_letters(r):
                if sign > 0:
                    edge = (coset, gen)
                    coset = table.action[coset][2 * gen]
                else:
                    coset = table.action[coset][2 * gen + 1]
                    edge = (coset, gen)
                if edge in schreier:
                    word.append((schreier[edge], sign))
            relators.append(reduce_word(word))

    logger.debug(f"Райдемайстер-Шрайер: {len(names)} образующих, {len(relators)} соотношений до редукции")
    return Presentation(tuple(names), tuple(r for r in relators if r))


def schreier_relator_count(p: Presentation, table: CosetTable) -> int:
    """Число переписанных соотношений до удаления пустых: индекс * число соотношений"""
    return table.index * len(p.relators)


# ----------------------------------------------------------------------
# Совершенность
# ----------------------------------------------------------------------
SubgroupSpec = Union[str, Sequence[Word]]


def subgroup_table(p: Presentation, subgroup: SubgroupSpec, max_cosets: int = DEFAULT_MAX_COSETS) -> CosetTable:
    if subgroup == "derived":
        moduli, _ = _abelian_coordinates(p)
        if any(d == 0 for d in moduli):
            return todd_coxeter(p, _commutators(len(p.generators)), max_cosets)
        return derived_coset_table(p)
    if subgroup == "whole":
        return todd_coxeter(p, [((g, 1),) for g in range(len(p.generators))], max_cosets)
    if subgroup == "trivial":
        return todd_coxeter(p, [], max_cosets)
    return todd_coxeter(p, list(subgroup), max_cosets)


def perfect_check(p: Presentation, subgroup: SubgroupSpec = "derived", max_cosets: int = DEFAULT_MAX_COSETS) -> VerificationReport:
    """todd_coxeter -> reidemeister_schreier -> abelianization"""
    table = subgroup_table(p, subgroup, max_cosets)
    sub = reidemeister_schreier(p, table)
    invariants = abelianization(sub)
    perfect = invariants.is_trivial
    logger.info(f"Подгруппа индекса {table.index}: абелианизация {invariants.invariant_factors}, "
                f"свободный ранг {invariants.free_rank}")
    return VerificationReport.from_checks(
        "perfect_check",
        {"perfect": perfect},
        data={
            "index": table.index,
            "schreier_generators": len(sub.generators),
            "rewritten_relators": schreier_relator_count(p, table),
            "invariant_factors": invariants.invariant_factors,
            "free_rank": invariants.free_rank,
        },
    )
