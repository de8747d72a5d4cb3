"""pitchgate: grade startup pitch transcripts on eight critical factors via a
pluggable completion backend, train classifier ensembles on the grades to
predict deal outcomes, and evaluate both grading fidelity and prediction
quality."""

__version__ = "0.1.0"

from . import classifiers, corpus, evaluation, features, grader, rubric  # noqa: F401
