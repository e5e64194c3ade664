"""Line-level diffs between page revisions.

The delta is minimal in the longest-common-subsequence sense: the number of
removed plus added lines equals len(old) + len(new) - 2 * LCS(old, new).
Deltas are faithful: applying the removals to the old text and then the
insertions reproduces the new text exactly.
"""

from bisect import bisect_left
from dataclasses import dataclass

from talktriage.errors import UsageError
from talktriage.ingest.revisions import RevisionSnapshot

# beyond this many DP cells, switch to the sparse matcher; both compute a
# true longest common subsequence, so delta minimality is unaffected
DP_WINDOW_LIMIT = 250_000


@dataclass(frozen=True)
class PageDelta:
    page_title: str
    old_revision_id: int  # 0 when there is no prior revision
    new_revision_id: int
    added_lines: tuple[tuple[int, str], ...] = ()  # (index in new text, line)
    removed_lines: tuple[tuple[int, str], ...] = ()  # (index in old text, line)

    @property
    def is_empty(self) -> bool:
        return not self.added_lines and not self.removed_lines


def _split(text: str) -> list[str]:
    # split/join on "\n" round-trips exactly, including trailing newlines
    return text.split("\n")


def _lcs_pairs_dense(a: list[str], b: list[str]) -> list[tuple[int, int]]:
    """Matched (i, j) index pairs of one LCS, by the classic DP table."""
    la, lb = len(a), len(b)
    dp = [[0] * (lb + 1) for _ in range(la + 1)]
    for i in range(la - 1, -1, -1):
        row, below = dp[i], dp[i + 1]
        for j in range(lb - 1, -1, -1):
            if a[i] == b[j]:
                row[j] = below[j + 1] + 1
            else:
                below_j = below[j]
                right = row[j + 1]
                row[j] = below_j if below_j >= right else right
    pairs: list[tuple[int, int]] = []
    i = j = 0
    while i < la and j < lb:
        if a[i] == b[j]:
            pairs.append((i, j))
            i += 1
            j += 1
        elif dp[i + 1][j] >= dp[i][j + 1]:
            i += 1
        else:
            j += 1
    return pairs


def _lcs_pairs_sparse(a: list[str], b: list[str]) -> list[tuple[int, int]]:
    """Matched (i, j) pairs of one LCS via Hunt-Szymanski.

    An LCS is a longest strictly increasing chain of match points, found
    here with patience-style binary search in O((matches + n) log n) --
    fast when most lines are unique, which full page texts are. Each
    line's occurrences are visited in descending j so no chain ever uses
    two matches from the same i.
    """
    positions: dict[str, list[int]] = {}
    for j, line in enumerate(b):
        positions.setdefault(line, []).append(j)

    tails: list[int] = []  # tails[k] = smallest chain-end j for length k+1
    nodes: list[tuple] = []  # node at depth k: (i, j, parent node)
    for i, line in enumerate(a):
        occurrences = positions.get(line)
        if not occurrences:
            continue
        for j in reversed(occurrences):
            k = bisect_left(tails, j)
            node = (i, j, nodes[k - 1] if k > 0 else None)
            if k == len(tails):
                tails.append(j)
                nodes.append(node)
            elif j < tails[k]:
                tails[k] = j
                nodes[k] = node
    pairs: list[tuple[int, int]] = []
    chain = nodes[-1] if nodes else None
    while chain is not None:
        pairs.append((chain[0], chain[1]))
        chain = chain[2]
    pairs.reverse()
    return pairs


def _lcs_keep_flags(old: list[str], new: list[str]) -> tuple[list[bool], list[bool]]:
    """Mark which lines of each side belong to one longest common subsequence."""
    n, m = len(old), len(new)
    keep_old = [False] * n
    keep_new = [False] * m

    # strip common prefix/suffix first; page edits are usually local
    lo = 0
    while lo < n and lo < m and old[lo] == new[lo]:
        keep_old[lo] = keep_new[lo] = True
        lo += 1
    hi = 0
    while hi < n - lo and hi < m - lo and old[n - 1 - hi] == new[m - 1 - hi]:
        keep_old[n - 1 - hi] = keep_new[m - 1 - hi] = True
        hi += 1

    a = old[lo : n - hi]
    b = new[lo : m - hi]
    if a and b:
        if len(a) * len(b) <= DP_WINDOW_LIMIT:
            pairs = _lcs_pairs_dense(a, b)
        else:
            pairs = _lcs_pairs_sparse(a, b)
        for i, j in pairs:
            keep_old[lo + i] = True
            keep_new[lo + j] = True
    return keep_old, keep_new


def compute_delta(old: RevisionSnapshot, new: RevisionSnapshot) -> PageDelta:
    """Diff two snapshots of the same page. Identical texts give an empty delta."""
    if old.page_title != new.page_title:
        raise UsageError(
            f"cannot diff across pages: {old.page_title!r} vs {new.page_title!r}"
        )
    if new.revision_id <= old.revision_id:
        raise UsageError(
            f"new revision {new.revision_id} is not after old revision {old.revision_id}"
        )
    return diff_texts(
        old.wikitext,
        new.wikitext,
        page_title=new.page_title,
        old_revision_id=old.revision_id,
        new_revision_id=new.revision_id,
    )


def diff_texts(
    old_text: str,
    new_text: str,
    *,
    page_title: str,
    old_revision_id: int,
    new_revision_id: int,
) -> PageDelta:
    old_lines = _split(old_text)
    new_lines = _split(new_text)
    if old_text == new_text:
        return PageDelta(page_title, old_revision_id, new_revision_id)
    keep_old, keep_new = _lcs_keep_flags(old_lines, new_lines)
    removed = tuple(
        (i, line) for i, line in enumerate(old_lines) if not keep_old[i]
    )
    added = tuple((j, line) for j, line in enumerate(new_lines) if not keep_new[j])
    return PageDelta(page_title, old_revision_id, new_revision_id, added, removed)


def reconstruct(old_text: str, delta: PageDelta) -> str:
    """Apply a delta to the old text; inverse check for delta faithfulness."""
    lines = _split(old_text)
    removed_at = {i for i, _ in delta.removed_lines}
    kept = [line for i, line in enumerate(lines) if i not in removed_at]
    for j, line in delta.added_lines:  # indices ascend into the growing list
        kept.insert(j, line)
    return "\n".join(kept)
