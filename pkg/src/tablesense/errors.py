"""Exception hierarchy shared across the package."""


class TableSenseError(Exception):
    """Base class for all errors raised by tablesense."""


# -- sources and extraction -------------------------------------------------

class SourceError(TableSenseError):
    """A document could not be obtained or decoded."""


class NetworkError(SourceError):
    pass


class NotFound(SourceError):
    pass


class UnsupportedScheme(SourceError):
    pass


class DecodeError(SourceError):
    pass


class EmptyDocument(SourceError):
    pass


class DegenerateTable(TableSenseError):
    """Expanded grid is smaller than 2x2."""


# -- heuristics -------------------------------------------------------------

class TooFewRows(TableSenseError, ValueError):
    pass


class TooFewColumns(TableSenseError, ValueError):
    pass


# -- classifiers ------------------------------------------------------------

class TrainingError(TableSenseError):
    pass


class EmptyTrainingSet(TrainingError):
    pass


class SingleClassTraining(TrainingError):
    pass


class DimensionMismatch(TrainingError, ValueError):
    pass


class EmptyTestSet(TrainingError):
    pass


class TooFewSamples(TrainingError):
    pass


class ModelFormatError(TableSenseError):
    """A persisted model could not be read back."""


# -- rdf --------------------------------------------------------------------

class InvalidBaseUri(TableSenseError, ValueError):
    pass


# -- corpus and pipeline ----------------------------------------------------

class CorpusError(TableSenseError):
    pass


class MissingDocument(CorpusError):
    pass


class MissingTableIndex(CorpusError):
    pass


class MalformedEntry(CorpusError):
    def __init__(self, message, line=None):
        super().__init__(message)
        self.line = line


class CorpusWriteError(CorpusError):
    pass


class UnknownTable(TableSenseError):
    pass


class EmptyReport(TableSenseError):
    pass


class IncompatibleModels(TableSenseError):
    """Model pair is missing, of the wrong task, or built for another metric."""
