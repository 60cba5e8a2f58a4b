package app;

import java.util.function.Function;

public interface Pipeline<I, O> {
    O process(I input);

    default <R> Pipeline<I, R> then(Pipeline<O, R> next) {
        return input -> next.process(process(input));
    }

    interface Stage extends Pipeline<String, String> {
        default Function<String, String> asFunction() {
            return this::process;
        }
    }
}
