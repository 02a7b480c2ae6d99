from .settings import settings, AwmvcSettings

__all__ = ["settings", "AwmvcSettings"]
