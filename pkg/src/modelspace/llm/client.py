"""Chat-completion client (OpenAI-compatible wire format) plus deterministic
mock providers for offline runs.

The token estimator is a deliberate over-approximation (ceil(chars/3)) so
that "does not fit" decisions are conservative.
"""
from __future__ import annotations

import hashlib
import os
import time
from dataclasses import dataclass, field
from pathlib import Path

DEFAULT_API_KEY_ENV = "MODELSPACE_API_KEY"
DEFAULT_REPLY_RESERVE = 512
CHARS_PER_TOKEN = 3


class LlmError(Exception):
    pass


class ContextOverflow(LlmError):
    """Prompt does not fit the provider's context window."""


class ProviderError(LlmError):
    def __init__(self, message, status=None, body=None):
        super().__init__(message)
        self.status = status
        self.body = body


class ProviderTimeout(ProviderError):
    pass


@dataclass(frozen=True)
class ProviderConfig:
    endpoint: str = "https://api.openai.com/v1/chat/completions"
    model: str = "gpt-4"
    context_limit: int = 8192
    temperature: float = 0.0
    max_retries: int = 3
    timeout_seconds: float = 120.0
    api_key_env: str = DEFAULT_API_KEY_ENV
    reply_reserve: int = DEFAULT_REPLY_RESERVE

    def __post_init__(self):
        if self.context_limit <= 0:
            raise ValueError("context_limit must be positive")
        if self.max_retries < 0:
            raise ValueError("max_retries must be >= 0")


@dataclass
class LlmResponse:
    text: str
    usage: dict = field(default_factory=dict)
    metadata: dict = field(default_factory=dict)


def estimate_tokens(prompt: str) -> int:
    return -(-len(prompt) // CHARS_PER_TOKEN)  # ceil division


def check_context_fit(cfg: ProviderConfig, prompt: str) -> tuple[int, bool]:
    """Returns (token estimate, fits). Fit reserves room for the reply."""
    estimate = estimate_tokens(prompt)
    return estimate, estimate + cfg.reply_reserve <= cfg.context_limit


def complete(cfg: ProviderConfig, prompt: str) -> LlmResponse:
    """POST to the configured endpoint, retrying with exponential backoff on
    rate limits and transient failures."""
    import requests

    _, fits = check_context_fit(cfg, prompt)
    if not fits:
        raise ContextOverflow(
            f"prompt estimate exceeds context limit of {cfg.context_limit}"
        )
    api_key = os.environ.get(cfg.api_key_env, "")
    payload = {
        "model": cfg.model,
        "messages": [{"role": "user", "content": prompt}],
        "temperature": cfg.temperature,
    }
    headers = {"Content-Type": "application/json"}
    if api_key:
        headers["Authorization"] = f"Bearer {api_key}"

    last_error: Exception | None = None
    for attempt in range(cfg.max_retries + 1):
        try:
            resp = requests.post(
                cfg.endpoint, json=payload, headers=headers, timeout=cfg.timeout_seconds
            )
        except requests.Timeout as exc:
            last_error = ProviderTimeout(str(exc))
        except requests.RequestException as exc:
            last_error = ProviderError(str(exc))
        else:
            if resp.status_code == 200:
                body = resp.json()
                text = body["choices"][0]["message"]["content"]
                return LlmResponse(
                    text=text,
                    usage=body.get("usage", {}),
                    metadata={"model": body.get("model", cfg.model)},
                )
            last_error = ProviderError(
                f"provider returned HTTP {resp.status_code}",
                status=resp.status_code,
                body=resp.text[:2000],
            )
            if resp.status_code not in (408, 409, 429, 500, 502, 503, 504):
                raise last_error
        if attempt < cfg.max_retries:
            time.sleep(min(2.0**attempt, 30.0))
    raise last_error


class HttpProvider:
    """Thin object wrapper around complete() for pipeline use."""

    name = "http"

    def __init__(self, cfg: ProviderConfig):
        self.cfg = cfg

    def complete(self, prompt: str) -> LlmResponse:
        return complete(self.cfg, prompt)


def prompt_key(prompt: str) -> str:
    return hashlib.sha256(prompt.encode("utf-8")).hexdigest()


class DirectoryMockProvider:
    """Deterministic mock: responses read from <dir>/<sha256(prompt)>.txt."""

    name = "mock-dir"

    def __init__(self, directory: str | Path):
        self.directory = Path(directory)

    def complete(self, prompt: str) -> LlmResponse:
        path = self.directory / f"{prompt_key(prompt)}.txt"
        if not path.exists():
            raise ProviderError(f"no canned response for prompt hash {prompt_key(prompt)}")
        return LlmResponse(text=path.read_text(), metadata={"source": str(path)})

    @staticmethod
    def store(directory: str | Path, prompt: str, response: str) -> Path:
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        path = directory / f"{prompt_key(prompt)}.txt"
        path.write_text(response)
        return path


class FunctionProvider:
    """Mock backed by an arbitrary prompt -> text function."""

    def __init__(self, fn, name: str = "mock-fn"):
        self.fn = fn
        self.name = name

    def complete(self, prompt: str) -> LlmResponse:
        return LlmResponse(text=self.fn(prompt))
