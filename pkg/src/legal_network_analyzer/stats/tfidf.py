"""
TF-IDF term summaries of cluster families
"""
import math
from typing import Dict, Iterable, List, Mapping, Tuple

import numpy as np
from sklearn.feature_extraction.text import CountVectorizer

# nouns naming structural elements of legal texts
STRUCTURAL_TERMS = ("section", "title", "paragraph", "absatz", "satz")

_WORD = r"(?u)\b[^\W\d_][^\W\d_]+\b"


def tfidf_top_terms(
    texts: Mapping[int, str],
    k: int = 10,
    exclusions: Iterable[str] = STRUCTURAL_TERMS,
) -> Dict[int, List[Tuple[str, float]]]:
    """Top-k terms per family by raw count x ln(N / df); ties in lexicographic order"""
    keys = list(texts)
    result: Dict[int, List[Tuple[str, float]]] = {key: [] for key in keys}
    documents = [texts[key] for key in keys]
    if not any(d.strip() for d in documents):
        return result

    vectorizer = CountVectorizer(lowercase=True, token_pattern=_WORD, stop_words=sorted({e.lower() for e in exclusions}))
    try:
        counts = vectorizer.fit_transform(documents).toarray()
    except ValueError:
        # every token excluded
        return result
    terms = vectorizer.get_feature_names_out()
    n = len(documents)
    df = (counts > 0).sum(axis=0)
    idf = np.array([math.log(n / d) if d else 0.0 for d in df])
    scores = counts * idf

    for row, key in enumerate(keys):
        ranked = sorted(
            ((str(terms[col]), float(scores[row, col])) for col in np.nonzero(scores[row] > 0)[0]),
            key=lambda item: (-item[1], item[0]),
        )
        result[key] = ranked[:k]
    return result
