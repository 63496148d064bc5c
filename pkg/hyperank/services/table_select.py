import logging
from typing import List, Optional, Protocol, Sequence

import numpy as np
from scipy import sparse
from sklearn.feature_extraction.text import HashingVectorizer

from ..errors import UsageError
from ..models.tables import LexicalVector, RankedEntity, SchemaEntity

logger = logging.getLogger(__name__)

N_FEATURES = 2**18


def normalize_text(text: str) -> str:
    return " ".join(text.lower().split())


class Vectorizer(Protocol):
    """Bất kỳ đối tượng nào ánh xạ mỗi văn bản thành một hàng thưa đã chuẩn hóa L2."""

    def transform(self, texts: Sequence[str]) -> sparse.csr_matrix: ...


class TrigramVectorizer:
    """Các trigram ký tự chồng lấn, băm vào 2**18 bucket.

    Không có trạng thái: không fit gì cả, văn bản giống nhau luôn cho cùng một vector.
    """

    def __init__(self, n_features: int = N_FEATURES):
        self._hasher = HashingVectorizer(
            analyzer="char",
            ngram_range=(3, 3),
            n_features=n_features,
            preprocessor=normalize_text,
            lowercase=False,
            alternate_sign=False,
            norm="l2",
        )

    def transform(self, texts: Sequence[str]) -> sparse.csr_matrix:
        return self._hasher.transform(list(texts)).tocsr()


default_vectorizer = TrigramVectorizer()


def vectorize(text: str, vectorizer: Optional[Vectorizer] = None) -> LexicalVector:
    row = (vectorizer or default_vectorizer).transform([text]).tocsr()
    row.sort_indices()
    return LexicalVector(
        indices=tuple(int(i) for i in row.indices),
        values=tuple(float(v) for v in row.data),
    )


def rank_entities(
    question: str,
    entities: Sequence[SchemaEntity],
    k: Optional[int] = None,
    vectorizer: Optional[Vectorizer] = None,
) -> List[RankedEntity]:
    """Sắp thực thể theo độ tương đồng cosine giảm dần với câu hỏi, hòa thì theo concat."""
    if not entities:
        raise UsageError("không có thực thể schema nào để xếp hạng")
    if k is not None and k < 1:
        raise UsageError(f"k phải ≥ 1, nhận được {k}")

    vectorizer = vectorizer or default_vectorizer
    concats = [e.concat for e in entities]
    matrix = vectorizer.transform(concats)
    query = vectorizer.transform([question])
    if query.nnz == 0:
        logger.warning("question %r has no trigrams; every entity scores 0", question)

    cosines = np.asarray((matrix @ query.T).todense()).ravel()
    scores = [min(1.0, max(0.0, float(c))) for c in cosines]
    order = sorted(range(len(entities)), key=lambda i: (-scores[i], concats[i]))
    if k is not None:
        order = order[:k]
    return [RankedEntity(entity=concats[i], score=scores[i]) for i in order]
