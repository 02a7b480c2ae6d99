from .kmeans import Assignment, KMeansConfig, kmeans

__all__ = ["Assignment", "KMeansConfig", "kmeans"]
