package org.counter;

import static org.junit.Assert.assertEquals;

import org.junit.Test;

public class CounterTest {
    @Test
    public void incrementsFromZero() {
        Counter counter = new Counter();
        counter.increment();
        assertEquals(1, counter.get());
    }
}
