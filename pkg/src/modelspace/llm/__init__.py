from .client import (
    CHARS_PER_TOKEN,
    DEFAULT_API_KEY_ENV,
    DEFAULT_REPLY_RESERVE,
    ContextOverflow,
    DirectoryMockProvider,
    FunctionProvider,
    HttpProvider,
    LlmError,
    LlmResponse,
    ProviderConfig,
    ProviderError,
    ProviderTimeout,
    check_context_fit,
    complete,
    estimate_tokens,
    prompt_key,
)
from .prompts import (
    ALL_KINDS,
    LLM_ONLY_EXECUTABILITY,
    LLM_ONLY_UNSOLVABILITY,
    POST_PROCESSOR_EXECUTABILITY,
    POST_PROCESSOR_UNSOLVABILITY,
    PRE_PROCESSOR_EXECUTABILITY,
    PRE_PROCESSOR_UNSOLVABILITY,
    VERBOSE_VARIANT,
    MissingExtras,
    format_options,
    render_prompt,
    template_for,
)
from .responses import (
    MODE_ADD_ONLY,
    MODE_ADD_REMOVE,
    MODE_AUTO,
    MODE_FULL_INIT,
    NoNumberFound,
    OutOfRange,
    ParsedEdits,
    UnparseableResponse,
    parse_edit_response,
    parse_option_choice,
    parse_ranked_list,
)

__all__ = [name for name in dir() if not name.startswith("_")]
