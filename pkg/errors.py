"""Hierarquia de exceções da biblioteca"""

class QRegressError(Exception):
    """Base de todos os erros da biblioteca"""

class ValidationError(QRegressError, ValueError):
    """Entrada inválida (código de saída 1 na CLI)"""

class DimensionError(ValidationError):
    """Dimensões incompatíveis entre matrizes ou operadores"""

class TimeOrderError(ValidationError):
    """Tempos fora de ordem ou duração negativa"""

class GridAlignmentError(ValidationError):
    """Tempo de consulta fora da grade do oráculo"""

class BudgetExceededError(ValidationError):
    """Vetor de estado conjunto maior que o orçamento configurado"""

class ModelError(ValidationError):
    """Violação de invariante do modelo ou do operador densidade"""

class DataFormatError(ValidationError):
    """Erro de leitura ou de formato em arquivo de entrada"""

class PropertyViolation(QRegressError):
    """Propriedade numérica fora da tolerância (código de saída 2 na CLI)"""
